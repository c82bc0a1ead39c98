use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Point, SemiLin2};

/// A failed cell evaluation, recorded instead of a membership bit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellError {
    pub m: u64,
    pub n: u64,
    pub message: String,
}

/// Membership bits on the grid `0 ≤ m < M`, `0 ≤ n < N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "WindowJson", try_from = "WindowJson")]
pub struct Window {
    m: u64,
    n: u64,
    rows: Vec<Vec<bool>>,
    /// Where the bits came from, e.g. `oracle` or `engine:power`.
    pub source: String,
    pub errors: Vec<CellError>,
}

#[derive(Serialize, Deserialize)]
struct WindowJson {
    #[serde(rename = "M")]
    m: u64,
    #[serde(rename = "N")]
    n: u64,
    rows: Vec<String>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    source: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    errors: Vec<CellError>,
}

impl From<Window> for WindowJson {
    fn from(w: Window) -> Self {
        WindowJson {
            m: w.m,
            n: w.n,
            rows: w
                .rows
                .iter()
                .map(|r| r.iter().map(|&b| if b { '1' } else { '0' }).collect())
                .collect(),
            source: w.source,
            errors: w.errors,
        }
    }
}

impl TryFrom<WindowJson> for Window {
    type Error = String;
    fn try_from(j: WindowJson) -> Result<Self, String> {
        if j.rows.len() as u64 != j.m {
            return Err(format!("expected {} rows, got {}", j.m, j.rows.len()));
        }
        let rows = j
            .rows
            .iter()
            .map(|r| {
                if r.len() as u64 != j.n {
                    return Err(format!("row {r:?} does not have length {}", j.n));
                }
                r.chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(format!("bad cell {c:?}")),
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        Ok(Window {
            m: j.m,
            n: j.n,
            rows,
            source: j.source,
            errors: j.errors,
        })
    }
}

impl Window {
    pub fn from_rows(rows: Vec<Vec<bool>>, n: u64, source: impl Into<String>) -> Self {
        assert!(rows.iter().all(|r| r.len() as u64 == n), "ragged window");
        Window {
            m: rows.len() as u64,
            n,
            rows,
            source: source.into(),
            errors: Vec::new(),
        }
    }

    /// The window of an explicit set.
    pub fn from_set(s: &SemiLin2, m: u64, n: u64, source: impl Into<String>) -> Self {
        let t = s.table(m, n);
        let rows = (0..m as usize)
            .map(|i| t[i * n as usize..(i + 1) * n as usize].to_vec())
            .collect();
        Self::from_rows(rows, n, source)
    }

    pub fn dims(&self) -> (u64, u64) {
        (self.m, self.n)
    }

    pub fn get(&self, m: u64, n: u64) -> bool {
        m < self.m && n < self.n && self.rows[m as usize][n as usize]
    }

    pub fn rows(&self) -> &[Vec<bool>] {
        &self.rows
    }

    pub fn true_cells(&self) -> Vec<Point> {
        let mut out = Vec::new();
        for m in 0..self.m {
            for n in 0..self.n {
                if self.get(m, n) {
                    out.push((m, n));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.n)
            .map(|n| (0..self.m).map(|m| self.get(m, n)).collect())
            .collect();
        let mut w = Self::from_rows(rows, self.m, self.source.clone());
        w.errors = self
            .errors
            .iter()
            .map(|e| CellError {
                m: e.n,
                n: e.m,
                message: e.message.clone(),
            })
            .collect();
        w
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let line: String = r.iter().map(|&b| if b { '1' } else { '0' }).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Evaluates `pred` on every cell. Rows are computed in parallel; the result
/// does not depend on scheduling.
pub fn window_enumerate<P>(m: u64, n: u64, source: &str, pred: P) -> Window
where
    P: Fn(u64, u64) -> bool + Sync,
{
    let rows: Vec<Vec<bool>> = (0..m)
        .into_par_iter()
        .map(|i| (0..n).map(|j| pred(i, j)).collect())
        .collect();
    Window::from_rows(rows, n, source)
}

/// Cell-for-cell comparison over the union of both grids, with cells outside
/// a grid read as false. Returns the lexicographically least disagreement.
pub fn window_equal(a: &Window, b: &Window) -> (bool, Option<Point>) {
    let (m, n) = (a.m.max(b.m), a.n.max(b.n));
    for i in 0..m {
        for j in 0..n {
            if a.get(i, j) != b.get(i, j) {
                return (false, Some((i, j)));
            }
        }
    }
    (a.dims() == b.dims(), None)
}
