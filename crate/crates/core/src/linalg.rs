//! Exact rank computations. Rows are cleared of denominators and eliminated
//! fraction-free, dividing each reduced row by the gcd of its entries.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Sparse row over column indices, sorted by column.
pub type SparseRow = Vec<(usize, Rational)>;

/// Integer row keyed by elimination position (not column index), sorted.
type IntRow = Vec<(usize, BigInt)>;

fn primitive(mut row: IntRow) -> IntRow {
    let mut g = BigInt::zero();
    for (_, c) in &row {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if row.first().is_some_and(|(_, c)| c.is_negative()) {
        g = -g;
    }
    if !g.is_one() && !g.is_zero() {
        for (_, c) in &mut row {
            *c /= &g;
        }
    }
    row
}

/// `a * x - b * y` over sorted sparse rows.
fn combine(x: &IntRow, a: &BigInt, y: &IntRow, b: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental row echelon form with a fixed column elimination order.
#[derive(Clone, Debug)]
pub struct Echelon {
    position: Vec<usize>,
    pivots: HashMap<usize, IntRow>,
}

impl Echelon {
    /// Columns are eliminated in the order given by `column_order`
    /// (a permutation of `0..ncols`).
    pub fn with_order(column_order: &[usize]) -> Self {
        let mut position = vec![usize::MAX; column_order.len()];
        for (pos, &col) in column_order.iter().enumerate() {
            position[col] = pos;
        }
        assert!(
            position.iter().all(|&p| p != usize::MAX),
            "column order is not a permutation"
        );
        Self {
            position,
            pivots: HashMap::new(),
        }
    }

    pub fn new(ncols: usize) -> Self {
        Self::with_order(&(0..ncols).collect::<Vec<_>>())
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn to_int_row(&self, row: &[(usize, Rational)]) -> IntRow {
        let mut lcm = BigInt::one();
        for (_, c) in row {
            lcm = lcm.lcm(c.denom());
        }
        let mut out: IntRow = row
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(col, c)| (self.position[*col], c.numer() * (&lcm / c.denom())))
            .collect();
        out.sort_by_key(|e| e.0);
        out
    }

    /// Reduces `row` against the current pivots; adds it if independent.
    /// Returns the elimination position of the new pivot.
    pub fn insert(&mut self, row: &[(usize, Rational)]) -> Option<usize> {
        let mut r = primitive(self.to_int_row(row));
        while let Some((lead, coeff)) = r.first().cloned() {
            match self.pivots.get(&lead) {
                Some(p) => {
                    let pl = &p[0].1;
                    let g = pl.gcd(&coeff);
                    r = primitive(combine(&r, &(pl / &g), p, &(&coeff / &g)));
                }
                None => {
                    self.pivots.insert(lead, r);
                    return Some(lead);
                }
            }
        }
        None
    }

    /// Number of pivots at elimination positions `>= from`.
    pub fn rank_from(&self, from: usize) -> usize {
        self.pivots.keys().filter(|&&p| p >= from).count()
    }

    /// Pivot rows whose leading position is `>= from`, as column-indexed rows.
    pub fn rows_from(&self, from: usize) -> Vec<SparseRow> {
        let mut column = vec![0; self.position.len()];
        for (col, &pos) in self.position.iter().enumerate() {
            column[pos] = col;
        }
        let mut leads: Vec<&usize> = self.pivots.keys().filter(|&&p| p >= from).collect();
        leads.sort();
        leads
            .into_iter()
            .map(|lead| {
                let mut row: SparseRow = self.pivots[lead]
                    .iter()
                    .map(|(pos, c)| (column[*pos], Rational::from_integer(c.clone())))
                    .collect();
                row.sort_by_key(|e| e.0);
                row
            })
            .collect()
    }
}

/// Column order that eliminates the sparsest columns first.
pub fn sparsest_first(rows: &[SparseRow], ncols: usize) -> Vec<usize> {
    let mut counts = vec![0usize; ncols];
    for row in rows {
        for (c, _) in row {
            counts[*c] += 1;
        }
    }
    let mut order: Vec<usize> = (0..ncols).collect();
    order.sort_by_key(|&c| (counts[c], c));
    order
}

pub fn rank(rows: &[SparseRow], ncols: usize) -> usize {
    let mut ech = Echelon::with_order(&sparsest_first(rows, ncols));
    let mut sorted: Vec<&SparseRow> = rows.iter().collect();
    sorted.sort_by_key(|r| r.len());
    for row in sorted {
        ech.insert(row);
    }
    ech.rank()
}

/// Rank of the row space intersected with the span of the `keep` columns,
/// together with a basis of that intersection.
pub fn restricted_rows(rows: &[SparseRow], ncols: usize, keep: &[bool]) -> (usize, Vec<SparseRow>) {
    let mut counts = vec![0usize; ncols];
    for row in rows {
        for (c, _) in row {
            counts[*c] += 1;
        }
    }
    let mut order: Vec<usize> = (0..ncols).collect();
    order.sort_by_key(|&c| (keep[c], counts[c], c));
    let first_kept = keep.iter().filter(|&&k| !k).count();
    let mut ech = Echelon::with_order(&order);
    let mut sorted: Vec<&SparseRow> = rows.iter().collect();
    sorted.sort_by_key(|r| r.len());
    for row in sorted {
        ech.insert(row);
    }
    (ech.rank_from(first_kept), ech.rows_from(first_kept))
}

/// Exact rank of a dense matrix given row by row.
pub fn dense_rank(rows: &[Vec<Rational>]) -> usize {
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let sparse: Vec<SparseRow> = rows
        .iter()
        .map(|r| {
            r.iter()
                .cloned()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect()
        })
        .collect();
    rank(&sparse, ncols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(c, v)| (c, int(v))).collect()
    }

    #[test]
    fn empty_has_rank_zero() {
        assert_eq!(rank(&[], 3), 0);
    }

    #[test]
    fn dependent_rows() {
        let rows = vec![
            row(&[(0, 1), (1, 2)]),
            row(&[(1, 1), (2, 1)]),
            row(&[(0, 1), (1, 4), (2, 2)]),
        ];
        assert_eq!(rank(&rows, 3), 2);
    }

    #[test]
    fn fractions_are_cleared() {
        let rows = vec![
            vec![(0, frac(1, 2)), (1, frac(1, 3))],
            vec![(0, int(3)), (1, int(2))],
        ];
        assert_eq!(rank(&rows, 2), 1);
    }

    #[test]
    fn restriction_to_columns() {
        // x0 - x1 = 0, x0 - x2 = 0  =>  x1 - x2 lies in span{x1, x2}.
        let rows = vec![row(&[(0, 1), (1, -1)]), row(&[(0, 1), (2, -1)])];
        let (r, basis) = restricted_rows(&rows, 3, &[false, true, true]);
        assert_eq!(r, 1);
        assert_eq!(basis[0].iter().map(|e| e.0).collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn dense_identity() {
        let m: Vec<Vec<Rational>> = (0..4)
            .map(|i| (0..4).map(|j| int((i == j) as i64)).collect())
            .collect();
        assert_eq!(dense_rank(&m), 4);
    }
}
