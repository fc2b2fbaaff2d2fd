use std::fmt;

use serde::{Serialize, Serializer};

use super::partition::{partitions, Partition};
use crate::error::{Error, Result};

/// A standard Young tableau in English notation: rows top to bottom,
/// entries `1..=n` increasing along rows and down columns.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syt {
    rows: Vec<Vec<usize>>,
}

impl Syt {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let t = Syt { rows };
        let n = t.size();
        let mut seen = vec![false; n];
        let bad = || Error::InvalidArgument(format!("{t} is not a standard Young tableau"));
        if t.rows.iter().any(Vec::is_empty) || t.rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(bad());
        }
        for (i, row) in t.rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v == 0 || v > n || std::mem::replace(&mut seen[v - 1], true) {
                    return Err(bad());
                }
                if (j > 0 && row[j - 1] >= v) || (i > 0 && t.rows[i - 1][j] >= v) {
                    return Err(bad());
                }
            }
        }
        Ok(t)
    }

    pub fn empty() -> Self {
        Syt { rows: Vec::new() }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(Vec::len).collect()).expect("rows weakly decrease")
    }

    fn row_of(&self, v: usize) -> usize {
        self.rows.iter().position(|r| r.contains(&v)).expect("entry present")
    }

    /// `i` is a descent when `i+1` sits in a strictly lower row than `i`.
    pub fn descent_set(&self) -> Vec<usize> {
        (1..self.size()).filter(|&i| self.row_of(i + 1) > self.row_of(i)).collect()
    }
}

impl fmt::Display for Syt {
    /// Rows separated by `/`, e.g. `1,3/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.rows.iter().map(|r| r.iter().map(usize::to_string).collect::<Vec<_>>().join(",")).collect();
        write!(f, "{}", rows.join("/"))
    }
}

impl fmt::Debug for Syt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl Serialize for Syt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(s)
    }
}

/// Descent set of a tableau; see [`Syt::descent_set`].
pub fn descent_set_tab(q: &Syt) -> Vec<usize> {
    q.descent_set()
}

/// All standard Young tableaux of shape `lambda`, sorted.
pub fn syt_of_shape(lambda: &Partition) -> Vec<Syt> {
    // Remove the largest entry from each outer corner in turn.
    fn go(shape: Vec<usize>, n: usize) -> Vec<Vec<Vec<usize>>> {
        if n == 0 {
            return vec![vec![Vec::new(); shape.len()]];
        }
        let mut out = Vec::new();
        for r in 0..shape.len() {
            let is_corner = shape[r] > 0 && shape.get(r + 1).is_none_or(|&below| below < shape[r]);
            if !is_corner {
                continue;
            }
            let mut smaller = shape.clone();
            smaller[r] -= 1;
            for mut t in go(smaller, n - 1) {
                t[r].push(n);
                out.push(t);
            }
        }
        out
    }
    let mut out: Vec<Syt> = go(lambda.parts().to_vec(), lambda.size()).into_iter().map(|rows| Syt { rows }).collect();
    out.sort();
    out
}

/// All standard Young tableaux with `n` cells, shapes in decreasing order.
pub fn all_syt(n: usize) -> Vec<Syt> {
    partitions(n).iter().flat_map(syt_of_shape).collect()
}

/// Robinson–Schensted row insertion: `(P, Q)` with `P` the insertion
/// tableau and `Q` the recording tableau.
pub fn rsk(w: &[usize]) -> Result<(Syt, Syt)> {
    crate::perm::check_permutation(w)?;
    let mut p: Vec<Vec<usize>> = Vec::new();
    let mut q: Vec<Vec<usize>> = Vec::new();
    for (step, &letter) in w.iter().enumerate() {
        let mut x = letter;
        let mut row = 0;
        loop {
            if row == p.len() {
                p.push(vec![x]);
                q.push(vec![step + 1]);
                break;
            }
            match p[row].iter().position(|&y| y > x) {
                Some(k) => {
                    x = std::mem::replace(&mut p[row][k], x);
                    row += 1;
                }
                None => {
                    p[row].push(x);
                    q[row].push(step + 1);
                    break;
                }
            }
        }
    }
    Ok((Syt { rows: p }, Syt { rows: q }))
}
