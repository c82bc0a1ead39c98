use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Poly;
use crate::error::{Error, Result};
use crate::exactnum::{factor_u64, lcm_u64, mulmod, powmod, CycRat, Field, Rat};

/// Monic gcd by the Euclidean algorithm.
pub fn poly_gcd<F: Field>(p: &Poly<F>, q: &Poly<F>) -> Result<Poly<F>> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroInput("gcd of two zero polynomials"));
    }
    let (mut a, mut b) = (p.clone(), q.clone());
    while !b.is_zero() {
        let r = a.rem(&b)?;
        a = std::mem::replace(&mut b, r);
    }
    Ok(a.monic())
}

/// Whether `p` and `q` share a complex root (a nonzero one when `exclude_zero`).
///
/// A zero polynomial counts as vanishing everywhere. Coprimality is first
/// tested modulo a few primes, which is conclusive when the reductions are
/// coprime; otherwise a common factor is reconstructed and checked by exact
/// division.
pub fn common_root_exists<F: Field>(p: &Poly<F>, q: &Poly<F>, exclude_zero: bool) -> bool {
    let (p, q) = if exclude_zero {
        (p.strip_zero_root(), q.strip_zero_root())
    } else {
        (p.clone(), q.clone())
    };
    match (p.is_zero(), q.is_zero()) {
        (true, true) => return true,
        (true, false) => return !q.is_constant(),
        (false, true) => return !p.is_constant(),
        _ => {}
    }
    if p.is_constant() || q.is_constant() {
        return false;
    }
    let n = lcm_u64(p.conductor(), q.conductor());
    if coprime_mod_primes(&p, &q, n, 3) {
        return false;
    }
    if let Some(answer) = modular_common_factor(&p, &q, n) {
        return answer;
    }
    poly_gcd(&p, &q).is_ok_and(|g| g.degree().unwrap_or(0) >= 1)
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Primes `p ≡ 1 (mod n)` below `2^31`, largest first, with an element of order exactly `n`.
fn split_primes(n: u64) -> impl Iterator<Item = (u64, u64)> {
    let top = (1u64 << 31) - 1;
    let qs: Vec<u64> = factor_u64(n).into_iter().map(|(q, _)| q).collect();
    let mut k = (top - 1) / n;
    std::iter::from_fn(move || {
        while k > 0 {
            let p = k * n + 1;
            k -= 1;
            if !is_prime_u64(p) {
                continue;
            }
            for g in 2..p {
                let w = powmod(g, (p - 1) / n, p);
                if qs.iter().all(|&q| powmod(w, n / q, p) != 1) {
                    return Some((p, w));
                }
            }
        }
        None
    })
}

fn reduce<F: Field>(f: &Poly<F>, p: u64, n: u64, w: u64) -> Option<Vec<u64>> {
    let v = f
        .coeffs()
        .iter()
        .map(|c| c.reduce_mod(p, n, w))
        .collect::<Option<Vec<u64>>>()?;
    if v.last().is_some_and(|&l| l == 0) {
        return None;
    }
    Some(v)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn rem_mod(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let db = b.len() - 1;
    let inv = powmod(b[db], p - 2, p);
    let support: Vec<(usize, u64)> = b[..db]
        .iter()
        .copied()
        .enumerate()
        .filter(|&(_, c)| c != 0)
        .collect();
    while a.len() > db {
        let top = a.len() - 1;
        let c = mulmod(a[top], inv, p);
        if c != 0 {
            let shift = top - db;
            for &(j, bj) in &support {
                let t = mulmod(c, bj, p);
                a[shift + j] = (a[shift + j] + p - t) % p;
            }
        }
        a.pop();
        trim(a);
    }
}

/// Monic gcd over `F_p`.
fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        rem_mod(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&l) = a.last() {
        let inv = powmod(l, p - 2, p);
        for c in a.iter_mut() {
            *c = mulmod(*c, inv, p);
        }
    }
    a
}

/// True when some good prime proves `p` and `q` coprime. Leading coefficients
/// must survive the reduction; the roots of the monic normalisations are then
/// integral at the chosen prime, so a common factor would reduce to one of the
/// same degree.
fn coprime_mod_primes<F: Field>(p: &Poly<F>, q: &Poly<F>, n: u64, tries: usize) -> bool {
    let mut good = 0;
    for (pr, w) in split_primes(n).take(4 * tries) {
        let (Some(a), Some(b)) = (reduce(p, pr, n, w), reduce(q, pr, n, w)) else {
            continue;
        };
        if gcd_mod(&a, &b, pr).len() == 1 {
            return true;
        }
        good += 1;
        if good >= tries {
            break;
        }
    }
    false
}

/// Solves `Σ_k a_k x_j^k = v_j` for distinct nodes `x_j` over `F_p`.
fn vandermonde_solve(nodes: &[u64], values: &[u64], p: u64) -> Vec<u64> {
    let k = nodes.len();
    let mut rows: Vec<Vec<u64>> = nodes
        .iter()
        .zip(values)
        .map(|(&x, &v)| {
            let mut row: Vec<u64> =
                std::iter::successors(Some(1u64), |&acc| Some(mulmod(acc, x, p)))
                    .take(k)
                    .collect();
            row.push(v);
            row
        })
        .collect();
    for col in 0..k {
        let piv = (col..k)
            .find(|&r| rows[r][col] != 0)
            .expect("distinct nodes give an invertible system");
        rows.swap(col, piv);
        let inv = powmod(rows[col][col], p - 2, p);
        for c in col..=k {
            rows[col][c] = mulmod(rows[col][c], inv, p);
        }
        for r in 0..k {
            if r != col && rows[r][col] != 0 {
                let f = rows[r][col];
                for c in col..=k {
                    let t = mulmod(f, rows[col][c], p);
                    rows[r][c] = (rows[r][c] + p - t) % p;
                }
            }
        }
    }
    rows.into_iter().map(|r| r[k]).collect()
}

/// The fraction `r/s ≡ a (mod m)` with `|r|, s ≤ sqrt(m/2)`, if any.
fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<Rat> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rat::new(r1, t1))
}

/// Reconstructs the monic gcd over `ℚ(ζ_n)` from its images under every
/// embedding `ζ_n ↦ ω^j` modulo many primes, and returns `Some(true)` once a
/// nonconstant candidate divides both inputs exactly. `Some(false)` means a
/// good prime proved coprimality; `None` means the prime supply ran out.
fn modular_common_factor<F: Field>(p: &Poly<F>, q: &Poly<F>, n: u64) -> Option<bool> {
    let units: Vec<u64> = (1..=n).filter(|&j| j.gcd(&n) == 1).collect();
    let mut best = usize::MAX;
    let mut coords: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut last: Option<Vec<Rat>> = None;
    'primes: for (pr, w) in split_primes(n).take(400) {
        let mut images: Vec<Vec<u64>> = Vec::with_capacity(units.len());
        let mut nodes = Vec::with_capacity(units.len());
        for &j in &units {
            let wj = powmod(w, j, pr);
            let (Some(a), Some(b)) = (reduce(p, pr, n, wj), reduce(q, pr, n, wj)) else {
                continue 'primes;
            };
            let g = gcd_mod(&a, &b, pr);
            if g.len() == 1 {
                return Some(false);
            }
            if images
                .first()
                .is_some_and(|f: &Vec<u64>| f.len() != g.len())
            {
                continue 'primes;
            }
            images.push(g);
            nodes.push(wj);
        }
        let d = images[0].len() - 1;
        if d > best {
            continue;
        }
        // Coordinates of the non-leading coefficients, coefficient-major.
        let local: Vec<u64> = (0..d)
            .flat_map(|i| {
                let vals: Vec<u64> = images.iter().map(|g| g[i]).collect();
                vandermonde_solve(&nodes, &vals, pr)
            })
            .collect();
        let bp = BigInt::from(pr);
        if d < best {
            best = d;
            coords = local.into_iter().map(BigInt::from).collect();
            modulus = bp;
            last = None;
            continue;
        }
        let inv = modulus.mod_floor(&bp).modpow(&BigInt::from(pr - 2), &bp);
        for (c, &r) in coords.iter_mut().zip(&local) {
            let t = ((BigInt::from(r) - &*c) * &inv).mod_floor(&bp);
            *c += &modulus * t;
        }
        modulus *= &bp;
        let Some(rec) = coords
            .iter()
            .map(|c| rational_reconstruction(c, &modulus))
            .collect::<Option<Vec<Rat>>>()
        else {
            last = None;
            continue;
        };
        if last.as_ref() == Some(&rec) {
            let k = units.len();
            let mut cs: Vec<F> = Vec::with_capacity(d + 1);
            for i in 0..d {
                let c = CycRat::new(n, rec[i * k..(i + 1) * k].to_vec());
                match F::from_cyc(&c) {
                    Ok(x) => cs.push(x),
                    Err(_) => continue 'primes,
                }
            }
            cs.push(F::one());
            let cand = Poly::new(cs);
            let divides = |x: &Poly<F>| x.rem(&cand).is_ok_and(|r| r.is_zero());
            if divides(p) && divides(q) {
                return Some(true);
            }
        }
        last = Some(rec);
    }
    None
}
