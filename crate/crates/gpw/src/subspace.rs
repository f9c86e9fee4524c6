//! Exact linear algebra over the rationals: reduced row echelon subspaces,
//! membership tests and nullspaces.
//!
//! Subspaces are canonicalized so that equality is structural comparison,
//! which is what the stabilization loops (power chains, Lie series, ideal
//! closures) rely on.

use crate::scalar::Rat;

/// A linear subspace of `Q^n`, stored as the reduced row echelon basis.
/// Rows are pivot-normalized with zeros above and below each pivot.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vec<Rat>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let mut rows = Vec::with_capacity(ambient);
        for i in 0..ambient {
            let mut row = vec![Rat::zero(); ambient];
            row[i] = Rat::one();
            rows.push(row);
        }
        Subspace { ambient, rows }
    }

    /// Row-reduces the given spanning vectors.
    pub fn from_vectors(ambient: usize, vectors: impl IntoIterator<Item = Vec<Rat>>) -> Self {
        let mut s = Subspace::zero(ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    fn pivot_of(row: &[Rat]) -> Option<usize> {
        row.iter().position(|c| !c.is_zero())
    }

    /// Reduces `v` against the current rows; a nonzero remainder is
    /// inserted and the basis re-canonicalized. Returns true if the
    /// dimension grew.
    pub fn insert(&mut self, mut v: Vec<Rat>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        for row in &self.rows {
            let p = Self::pivot_of(row).expect("stored rows are nonzero");
            if !v[p].is_zero() {
                let factor = v[p].clone();
                for (vc, rc) in v.iter_mut().zip(row) {
                    *vc = &*vc - &(&factor * rc);
                }
            }
        }
        let Some(p) = Self::pivot_of(&v) else {
            return false;
        };
        let inv = v[p].inv().expect("pivot nonzero");
        for c in v.iter_mut() {
            *c = &*c * &inv;
        }
        // Eliminate the new pivot column from existing rows, then keep rows
        // ordered by pivot position.
        for row in &mut self.rows {
            if !row[p].is_zero() {
                let factor = row[p].clone();
                for (rc, vc) in row.iter_mut().zip(&v) {
                    *rc = &*rc - &(&factor * vc);
                }
            }
        }
        let pos = self
            .rows
            .partition_point(|row| Self::pivot_of(row).unwrap() < p);
        self.rows.insert(pos, v);
        true
    }

    /// Exact membership test.
    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut v = v.to_vec();
        for row in &self.rows {
            let p = Self::pivot_of(row).unwrap();
            if !v[p].is_zero() {
                let factor = v[p].clone();
                for (vc, rc) in v.iter_mut().zip(row) {
                    *vc = &*vc - &(&factor * rc);
                }
            }
        }
        v.iter().all(Rat::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Span of the union.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r.clone());
        }
        s
    }
}

/// Basis of `{ x : M x = 0 }` for the constraint rows `M` over `Q^n`.
/// Constraint rows may be passed in any number; they are reduced on the fly.
pub fn nullspace(n: usize, constraints: impl IntoIterator<Item = Vec<Rat>>) -> Vec<Vec<Rat>> {
    let reduced = Subspace::from_vectors(n, constraints);
    let mut pivots = vec![None; n];
    for (r, row) in reduced.basis().iter().enumerate() {
        let p = row.iter().position(|c| !c.is_zero()).unwrap();
        pivots[p] = Some(r);
    }
    let mut basis = Vec::new();
    for free in 0..n {
        if pivots[free].is_some() {
            continue;
        }
        let mut v = vec![Rat::zero(); n];
        v[free] = Rat::one();
        for (col, pivot_row) in pivots.iter().enumerate() {
            if let Some(r) = pivot_row {
                v[col] = -&reduced.basis()[*r][free];
            }
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| Rat::from_i64(x)).collect()
    }

    #[test]
    fn rref_canonical_form() {
        let s = Subspace::from_vectors(3, [v(&[2, 4, 0]), v(&[1, 2, 1]), v(&[3, 6, 1])]);
        assert_eq!(s.dim(), 2);
        assert_eq!(s.basis()[0], v(&[1, 2, 0]));
        assert_eq!(s.basis()[1], v(&[0, 0, 1]));
        let t = Subspace::from_vectors(3, [v(&[1, 2, 1]), v(&[1, 2, -1])]);
        assert_eq!(s, t);
    }

    #[test]
    fn membership() {
        let s = Subspace::from_vectors(3, [v(&[1, 0, 1]), v(&[0, 1, 1])]);
        assert!(s.contains(&v(&[2, 3, 5])));
        assert!(!s.contains(&v(&[0, 0, 1])));
        assert!(s.contains(&v(&[0, 0, 0])));
    }

    #[test]
    fn nullspace_of_rank_one_map() {
        // x + y + z = 0 has a 2-dimensional solution space.
        let basis = nullspace(3, [v(&[1, 1, 1])]);
        assert_eq!(basis.len(), 2);
        for b in &basis {
            let sum = b.iter().fold(Rat::zero(), |a, c| &a + c);
            assert!(sum.is_zero());
        }
    }

    #[test]
    fn nullspace_of_full_rank_map_is_zero() {
        let basis = nullspace(2, [v(&[1, 0]), v(&[1, 1])]);
        assert!(basis.is_empty());
    }

    #[test]
    fn sum_and_inclusion() {
        let a = Subspace::from_vectors(3, [v(&[1, 0, 0])]);
        let b = Subspace::from_vectors(3, [v(&[0, 1, 0])]);
        let s = a.sum(&b);
        assert_eq!(s.dim(), 2);
        assert!(s.contains_subspace(&a));
        assert!(s.contains_subspace(&b));
        assert!(!a.contains_subspace(&s));
    }
}
