//! Exact Gaussian elimination over a cyclotomic field.

use std::sync::Arc;

use crate::cyclo::{CycloField, CycloNumber};

/// Row space kept in reduced row echelon form, filled one row at a time.
#[derive(Clone, Debug)]
pub struct Rref {
    field: Arc<CycloField>,
    cols: usize,
    /// (pivot column, row with a 1 at the pivot and zeros at other pivots)
    rows: Vec<(usize, Vec<CycloNumber>)>,
}

impl Rref {
    pub fn new(field: &Arc<CycloField>, cols: usize) -> Self {
        Self { field: field.clone(), cols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    fn reduce(&self, mut row: Vec<CycloNumber>) -> Vec<CycloNumber> {
        for (p, r) in &self.rows {
            if !row[*p].is_zero() {
                let c = row[*p].clone();
                for (x, y) in row.iter_mut().zip(r) {
                    if !y.is_zero() {
                        *x = &*x - &(&c * y);
                    }
                }
            }
        }
        row
    }

    /// Whether `row` lies in the current span.
    pub fn contains(&self, row: &[CycloNumber]) -> bool {
        self.reduce(row.to_vec()).iter().all(|x| x.is_zero())
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, row: Vec<CycloNumber>) -> bool {
        debug_assert_eq!(row.len(), self.cols);
        let mut row = self.reduce(row);
        let Some(p) = row.iter().position(|x| !x.is_zero()) else { return false };
        let inv = row[p].inv().expect("nonzero pivot");
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for (_, r) in self.rows.iter_mut() {
            if !r[p].is_zero() {
                let c = r[p].clone();
                for (x, y) in r.iter_mut().zip(&row) {
                    if !y.is_zero() {
                        *x = &*x - &(&c * y);
                    }
                }
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, row));
        true
    }

    /// Basis of `{x : r . x = 0 for every row r}`, one vector per free
    /// column in increasing order, with a 1 at that column.
    pub fn kernel(&self) -> Vec<Vec<CycloNumber>> {
        let zero = self.field.zero();
        let one = self.field.one();
        let pivots: Vec<usize> = self.rows.iter().map(|(p, _)| *p).collect();
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![zero.clone(); self.cols];
                v[free] = one.clone();
                for (p, r) in &self.rows {
                    v[*p] = -&r[free];
                }
                v
            })
            .collect()
    }
}

pub fn rank(rows: Vec<Vec<CycloNumber>>) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let Some(x) = first.first() else { return 0 };
    let mut e = Rref::new(&x.field().clone(), first.len());
    for r in rows {
        e.insert(r);
        if e.is_full() {
            break;
        }
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CycloField;

    #[test]
    fn rank_and_kernel() {
        let f = CycloField::new(4);
        let i = f.root_of_unity(1);
        let one = f.one();
        let zero = f.zero();
        // rows (1, i) and (i, -1) are dependent
        let rows = vec![vec![one.clone(), i.clone()], vec![i.clone(), -one.clone()]];
        assert_eq!(rank(rows.clone()), 1);
        let mut e = Rref::new(&f, 2);
        for r in rows {
            e.insert(r);
        }
        let k = e.kernel();
        assert_eq!(k.len(), 1);
        assert_eq!(&one * &k[0][0] + &i * &k[0][1], zero);
        assert!(e.contains(&[f.from_int(2), &i * &f.from_int(2)]));
        assert!(!e.contains(&[one.clone(), zero.clone()]));
    }

    #[test]
    fn empty_row_space_has_full_kernel() {
        assert_eq!(rank(vec![]), 0);
        assert_eq!(Rref::new(&CycloField::new(1), 3).kernel().len(), 3);
    }
}
