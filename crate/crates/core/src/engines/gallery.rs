use serde::{Deserialize, Serialize};

use super::EngineResult;
use crate::error::{Error, Result};
use crate::exactnum::{int_pow, Int};
use crate::oracle::torsion_solvable;
use crate::semilinear::{nonsl_certificate, EPSet1, NonSLCertificate, RowProvenance};

/// Named triples whose recurrence sets are known not to be semilinear.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum Gallery {
    /// `(z/2, z − 1, 1)`, with set `{(m, 2^m − 1)}`.
    Deg1Counter1,
    /// `(2z, z + 1, z^k)`, with set `ℤ≥0 × {0} ∪ {(r(k−1), 2^{rk} − 2^r) : r > 0}`.
    Deg1Counter2 { k: u64 },
    /// `(z^r, z^s, −z)` over nonzero `λ`, for odd `r, s ≥ 3`.
    PowerTil { r: u64, s: u64 },
}

fn nu2(x: u64) -> i64 {
    x.trailing_zeros() as i64
}

impl Gallery {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Gallery::Deg1Counter1 => Ok(()),
            Gallery::Deg1Counter2 { k } if k >= 2 => Ok(()),
            Gallery::Deg1Counter2 { .. } => Err(Error::Precondition("need k ≥ 2".into())),
            Gallery::PowerTil { r, s } if r >= 3 && s >= 3 && r % 2 == 1 && s % 2 == 1 => Ok(()),
            Gallery::PowerTil { .. } => Err(Error::Precondition("need odd r, s ≥ 3".into())),
        }
    }

    pub fn formula(&self) -> String {
        match *self {
            Gallery::Deg1Counter1 => "n = 2^m - 1".into(),
            Gallery::Deg1Counter2 { k } => {
                format!("n = 0 or (m, n) = (r*{}, 2^(r*{k}) - 2^r) with r > 0", k - 1)
            }
            Gallery::PowerTil { r, s } => format!(
                "for even m, n > 0: nu2(m/2) + {} = nu2(n/2); otherwise z^{r}, z^{s}, -z divisibility",
                powertil_offset(r, s)
            ),
        }
    }

    /// Exact membership of `(m, n)`.
    pub fn member(&self, m: u64, n: u64) -> bool {
        match *self {
            Gallery::Deg1Counter1 => m < 64 && n.checked_add(1) == Some(1u64 << m),
            Gallery::Deg1Counter2 { k } => {
                if n == 0 {
                    return true;
                }
                let r = m / (k - 1);
                m > 0
                    && m.is_multiple_of(k - 1)
                    && r * k < 64
                    && n == (1u64 << (r * k)) - (1u64 << r)
            }
            Gallery::PowerTil { r, s } => {
                if m > 0 && n > 0 && m.is_multiple_of(2) && n.is_multiple_of(2) {
                    nu2(m / 2) + powertil_offset(r, s) == nu2(n / 2)
                } else {
                    let one = Int::from(1);
                    let e1 = int_pow(r as i64, m) - 1;
                    let e2 = int_pow(s as i64, n) - 1;
                    torsion_solvable(&e1, &one, &e2, &one, 2)
                }
            }
        }
    }

    /// A proved non-semilinearity certificate.
    pub fn certificate(&self) -> Result<NonSLCertificate> {
        self.validate()?;
        match *self {
            Gallery::Deg1Counter1 => {
                let values: Vec<u64> = (0..12).map(|m| (1u64 << m) - 1).collect();
                NonSLCertificate::projection_gaps(1, values, "2^m - 1")
            }
            Gallery::Deg1Counter2 { k } => {
                let mut values = vec![0];
                values.extend(
                    (1..=8)
                        .take_while(|r| r * k < 63)
                        .map(|r| (1u64 << (r * k)) - (1u64 << r)),
                );
                NonSLCertificate::projection_gaps(1, values, &format!("2^(r*{k}) - 2^r"))
            }
            Gallery::PowerTil { r, s } => {
                let a = powertil_offset(r, s);
                let first = 1.max(-a) as u64;
                powertil_certificate(r, s, first..first + 4)
            }
        }
    }
}

/// `ν₂(r − 1) + ν₂(r + 1) − ν₂(s − 1) − ν₂(s + 1)`.
pub fn powertil_offset(r: u64, s: u64) -> i64 {
    nu2(r - 1) + nu2(r + 1) - nu2(s - 1) - nu2(s + 1)
}

/// Row `2^N` of the halved set `{(m, n) : (2m, 2n) ∈ S}`, namely
/// `{n > 0 : ν₂(n) = N + a}`.
pub fn powertil_halved_row(r: u64, s: u64, big_n: u64) -> Result<EPSet1> {
    let np = big_n as i64 + powertil_offset(r, s);
    if !(0..=62).contains(&np) {
        return Err(Error::Precondition(format!("N + a = {np} out of range")));
    }
    Ok(EPSet1::progression(1 << np, 1 << (np + 1)))
}

/// Certificate from the halved rows `2^N`, `N ∈ range`. Each row is recorded
/// under its index `2·2^N` in the original set; the row itself is the halved
/// slice, whose eventual period `2^{N+a+1}` grows with `N`.
pub fn powertil_certificate(
    r: u64,
    s: u64,
    range: std::ops::Range<u64>,
) -> Result<NonSLCertificate> {
    Gallery::PowerTil { r, s }.validate()?;
    let rows = range
        .map(|big_n| {
            let row = powertil_halved_row(r, s, big_n)?;
            let formula = format!(
                "{{n > 0 : nu2(n) = {}}} for (2^{big_n}, n) in the halved set",
                big_n as i64 + powertil_offset(r, s)
            );
            Ok((2 << big_n, row, RowProvenance::Formula(formula)))
        })
        .collect::<Result<Vec<_>>>()?;
    nonsl_certificate(rows)
}

/// The certificate-backed result for a gallery entry.
pub fn gallery(entry: &Gallery) -> Result<EngineResult> {
    Ok(EngineResult::NonSemilinear {
        formula: entry.formula(),
        certificate: entry.certificate()?,
    })
}
