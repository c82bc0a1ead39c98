use serde::{Deserialize, Serialize};

use super::EPSet1;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertMode {
    Proved,
    Empirical,
}

/// How a witness row was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowProvenance {
    /// From a closed formula valid for the whole row.
    Formula(String),
    /// Read off a finite window of the given width.
    Window { horizon: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertRow {
    pub m: u64,
    pub row: EPSet1,
    pub ep: u64,
    pub provenance: RowProvenance,
}

/// Evidence that a subset of `ℤ²≥0` is not semilinear.
///
/// In a semilinear set every infinite row slice has an eventual period
/// dividing one common bound, so rows whose periods keep growing rule it out.
/// The projection variant records a one-dimensional image whose gaps grow
/// without bound, which no eventually periodic set can have.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NonSLCertificate {
    RowPeriods {
        rows: Vec<CertRow>,
        mode: CertMode,
    },
    ProjectionGaps {
        /// Which coordinate is projected onto: 0 for `m`, 1 for `n`.
        coordinate: u8,
        values: Vec<u64>,
        formula: String,
        mode: CertMode,
    },
}

impl NonSLCertificate {
    pub fn mode(&self) -> CertMode {
        match self {
            NonSLCertificate::RowPeriods { mode, .. }
            | NonSLCertificate::ProjectionGaps { mode, .. } => *mode,
        }
    }

    /// Builds a projection certificate; consecutive gaps must strictly increase.
    pub fn projection_gaps(coordinate: u8, values: Vec<u64>, formula: &str) -> Result<Self> {
        if values.len() < 3 {
            return Err(Error::Precondition(
                "need at least three projected values".into(),
            ));
        }
        let gaps: Vec<u64> = values
            .windows(2)
            .map(|w| w[1].checked_sub(w[0]).filter(|&g| g > 0))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Precondition("projected values must increase".into()))?;
        if gaps.windows(2).any(|g| g[1] <= g[0]) {
            return Err(Error::Precondition("gaps must strictly increase".into()));
        }
        Ok(NonSLCertificate::ProjectionGaps {
            coordinate,
            values,
            formula: formula.to_string(),
            mode: CertMode::Proved,
        })
    }
}

/// Packages rows with strictly increasing eventual periods. The mode is
/// proved exactly when every row comes from a formula.
pub fn nonsl_certificate(rows: Vec<(u64, EPSet1, RowProvenance)>) -> Result<NonSLCertificate> {
    if rows.len() < 2 {
        return Err(Error::Precondition(
            "a certificate needs at least two rows".into(),
        ));
    }
    let rows: Vec<CertRow> = rows
        .into_iter()
        .map(|(m, row, provenance)| CertRow {
            m,
            ep: row.eventual_period(),
            row,
            provenance,
        })
        .collect();
    if rows.iter().any(|r| r.ep == 0) {
        return Err(Error::Precondition("witness rows must be infinite".into()));
    }
    if rows
        .windows(2)
        .any(|w| w[1].m <= w[0].m || w[1].ep <= w[0].ep)
    {
        return Err(Error::Precondition(
            "rows and eventual periods must strictly increase".into(),
        ));
    }
    let mode = if rows
        .iter()
        .all(|r| matches!(r.provenance, RowProvenance::Formula(_)))
    {
        CertMode::Proved
    } else {
        CertMode::Empirical
    };
    Ok(NonSLCertificate::RowPeriods { rows, mode })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(ep: u64) -> EPSet1 {
        EPSet1::progression(ep / 2, ep)
    }

    #[test]
    fn growing_periods_are_proved() {
        let rows = (1..=4u32)
            .map(|k| (2u64 << k, row(2 << k), RowProvenance::Formula("f".into())))
            .collect();
        let c = nonsl_certificate(rows).unwrap();
        assert_eq!(c.mode(), CertMode::Proved);
    }

    #[test]
    fn window_rows_are_empirical() {
        let rows = vec![
            (1, row(4), RowProvenance::Formula("f".into())),
            (2, row(8), RowProvenance::Window { horizon: 64 }),
        ];
        assert_eq!(nonsl_certificate(rows).unwrap().mode(), CertMode::Empirical);
    }

    #[test]
    fn preconditions() {
        let one = vec![(1, row(4), RowProvenance::Formula("f".into()))];
        assert!(nonsl_certificate(one).is_err());
        let equal = vec![
            (1, row(4), RowProvenance::Formula("f".into())),
            (2, row(4), RowProvenance::Formula("f".into())),
        ];
        assert!(nonsl_certificate(equal).is_err());
        assert!(NonSLCertificate::projection_gaps(1, vec![0, 1, 3, 7], "2^m-1").is_ok());
        assert!(NonSLCertificate::projection_gaps(1, vec![0, 2, 4, 6], "2m").is_err());
    }
}
