//! Fixed inputs for the kernel benchmarks.

use slrec_core::engines::{ChebSpec, PowerSpec};
use slrec_core::exactnum::rat;
use slrec_core::oracle::PolyTriple;
use slrec_core::{LinSet, Poly, Rat, SemiLin2};

/// Two linear sets whose intersection needs a nontrivial Hilbert basis.
pub fn linset_pair() -> (LinSet, LinSet) {
    (
        LinSet::new((1, 2), [(3, 5), (4, 1), (0, 7)]),
        LinSet::new((2, 0), [(5, 3), (2, 2), (6, 0)]),
    )
}

/// A union of slanted strips and sporadic points.
pub fn sample_set() -> SemiLin2 {
    let mut s = SemiLin2::from_linear([
        LinSet::new((0, 3), [(2, 5), (0, 4)]),
        LinSet::new((5, 0), [(3, 3), (7, 0)]),
        LinSet::new((1, 1), [(6, 4)]),
    ]);
    for p in [(0, 0), (4, 9), (11, 2)] {
        s.add_point(p);
    }
    s
}

pub fn power_spec() -> PowerSpec {
    PowerSpec::new(4, 3, (6, 5), (4, 1)).expect("valid")
}

pub fn cheb_spec() -> ChebSpec {
    ChebSpec::new(3, 2, 2, (-1, 1, -1)).expect("valid")
}

/// `(z² − 1, z² − 2z, −1)`, small enough for a full oracle window.
pub fn quadratic_triple() -> PolyTriple<Rat> {
    let p = |c: &[i64]| Poly::new(c.iter().map(|&x| rat(x, 1)).collect());
    PolyTriple::new(p(&[-1, 0, 1]), p(&[0, -2, 1]), p(&[-1]))
}
