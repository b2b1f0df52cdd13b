use super::{Matrix, Scalar};

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Reduced row echelon form with zero rows dropped.
    pub rref: Matrix,
    pub pivots: Vec<usize>,
}

/// Reduced row echelon form of `m`. Pivot rows are normalized to leading 1.
pub fn rref(m: &Matrix) -> Echelon {
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<Scalar>> = (0..rows).map(|r| m.row(r).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&k| !a[k][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for v in a[r][c..].iter_mut() {
                if !v.is_zero() {
                    *v = &*v * &inv;
                }
            }
        }
        let pivot_row = a[r].clone();
        for (k, row) in a.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !pv.is_zero() {
                    *v -= &(&f * pv);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    let rref = if a.is_empty() { Matrix::zeros(0, cols) } else { Matrix::from_rows(a) };
    Echelon { rref, pivots }
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).pivots.len()
}

/// A subspace of k^n stored by its canonical RREF basis (as rows).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Matrix::zeros(0, ambient_dim), pivots: vec![] }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::from_rows(&Matrix::identity(ambient_dim))
    }

    /// Span of the rows of `m`.
    pub fn from_rows(m: &Matrix) -> Self {
        let e = rref(m);
        Subspace { ambient_dim: m.cols(), basis: e.rref, pivots: e.pivots }
    }

    /// Span of the given vectors.
    pub fn span(ambient_dim: usize, vecs: &[Vec<Scalar>]) -> Self {
        if vecs.is_empty() {
            return Self::zero(ambient_dim);
        }
        Self::from_rows(&Matrix::from_rows(vecs.to_vec()))
    }

    /// Column space of `m`.
    pub fn image(m: &Matrix) -> Self {
        Self::from_rows(&m.transpose())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Basis vectors as rows, in reduced echelon form.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim()).map(|r| self.basis.row(r).to_vec()).collect()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = vec![Scalar::zero(); self.ambient_dim];
        for (k, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, b) in rebuilt.iter_mut().zip(self.basis.row(k)) {
                if !b.is_zero() {
                    *slot += &(c * b);
                }
            }
        }
        (rebuilt.as_slice() == v).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, o: &Subspace) -> bool {
        o.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        Subspace::from_rows(&Matrix::vstack(&[&self.basis, &o.basis]))
    }

    pub fn intersection(&self, o: &Subspace) -> Subspace {
        // x = Σ a_i u_i = Σ b_j w_j  ⇔  [Uᵀ | -Wᵀ](a,b) = 0
        let ut = self.basis.transpose();
        let wt = o.basis.transpose().scale(&-Scalar::one());
        let k = kernel_basis(&Matrix::hstack(&[&ut, &wt]));
        let vecs: Vec<Vec<Scalar>> = k
            .basis_vectors()
            .iter()
            .map(|ab| ut.mul_vec(&ab[..self.dim()]))
            .collect();
        Subspace::span(self.ambient_dim, &vecs)
    }
}

/// Right null space of `m` in canonical echelon form.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    let cols = m.cols();
    let e = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !e.pivots.contains(c)).collect();
    let vecs: Vec<Vec<Scalar>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (r, &p) in e.pivots.iter().enumerate() {
                let x = e.rref.get(r, f);
                if !x.is_zero() {
                    v[p] = -x;
                }
            }
            v
        })
        .collect();
    Subspace::span(cols, &vecs)
}

pub fn try_inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.rows();
    if n != m.cols() {
        return None;
    }
    let aug = Matrix::hstack(&[m, &Matrix::identity(n)]);
    let e = rref(&aug);
    // full rank iff the first n pivots are exactly the columns of m
    if e.pivots.len() < n || e.pivots.iter().take(n).enumerate().any(|(k, &p)| k != p) {
        return None;
    }
    let cols: Vec<usize> = (n..2 * n).collect();
    Some(e.rref.select_rows(&(0..n).collect::<Vec<_>>()).select_columns(&cols))
}

/// Solution set of `A X = B` for a single right-hand side column `b`.
#[derive(Clone, Debug)]
pub struct Solution {
    pub particular: Vec<Scalar>,
    pub kernel: Subspace,
}

/// Solves `a x = b`. Returns `None` when the system is inconsistent,
/// which is exactly when `rank [a | b] > rank a`.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Option<Solution> {
    assert_eq!(a.rows(), b.len(), "rhs length mismatch");
    let n = a.cols();
    let aug = Matrix::hstack(&[a, &Matrix::column_vector(b.to_vec())]);
    let e = rref(&aug);
    if e.pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Scalar::zero(); n];
    for (r, &p) in e.pivots.iter().enumerate() {
        x[p] = e.rref.get(r, n).clone();
    }
    Some(Solution { particular: x, kernel: kernel_basis(a) })
}

/// `V / relations`, with coordinates taken at the non-pivot columns of the
/// relation basis.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    ambient_dim: usize,
    relations: Subspace,
    projection: Matrix,
    section: Matrix,
}

pub fn quotient(ambient_dim: usize, relations: Subspace) -> QuotientSpace {
    assert_eq!(relations.ambient_dim(), ambient_dim, "relations live in a different space");
    let piv = relations.pivots().to_vec();
    let free: Vec<usize> = (0..ambient_dim).filter(|c| !piv.contains(c)).collect();
    let q = free.len();
    // v ≡ v - Σ_i v[p_i] R_i, which vanishes on pivots; read off the free coordinates.
    let mut projection = Matrix::zeros(q, ambient_dim);
    for (k, &f) in free.iter().enumerate() {
        projection.set(k, f, Scalar::one());
        for (i, &p) in piv.iter().enumerate() {
            let r = relations.basis().get(i, f);
            if !r.is_zero() {
                projection.add_at(k, p, &-r);
            }
        }
    }
    let mut section = Matrix::zeros(ambient_dim, q);
    for (k, &f) in free.iter().enumerate() {
        section.set(f, k, Scalar::one());
    }
    QuotientSpace { ambient_dim, relations, projection, section }
}

impl QuotientSpace {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.projection.rows()
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    pub fn section(&self) -> &Matrix {
        &self.section
    }

    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.projection.mul_vec(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_ints(rows)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&m(&[&[1, 0], &[0, 0]])), 1);
        assert_eq!(rank(&Matrix::zeros(3, 3)), 0);
        let i = Scalar::i();
        let g = Matrix::from_rows(vec![vec![i.clone(), Scalar::one()], vec![Scalar::one(), -i]]);
        assert_eq!(rank(&g), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Matrix::identity(2)).dim(), 0);
        assert_eq!(kernel_basis(&Matrix::zeros(3, 3)), Subspace::full(3));
        let k = kernel_basis(&m(&[&[1, 1]]));
        assert_eq!(k.basis(), &m(&[&[1, -1]]));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(try_inverse(&Matrix::identity(3)), Some(Matrix::identity(3)));
        let sw = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(try_inverse(&sw), Some(sw.clone()));
        assert_eq!(try_inverse(&m(&[&[1, 1], &[1, 1]])), None);
        assert_eq!(try_inverse(&m(&[&[1, 2, 3]])), None);
        assert_eq!(try_inverse(&Matrix::zeros(0, 0)), Some(Matrix::zeros(0, 0)));
    }

    #[test]
    fn quotient_examples() {
        let q = quotient(4, Subspace::zero(4));
        assert_eq!(q.dim(), 4);
        assert!(q.projection().is_identity());
        assert_eq!(quotient(2, Subspace::full(2)).dim(), 0);
        let q = quotient(2, Subspace::from_rows(&m(&[&[1, -1]])));
        assert_eq!(q.dim(), 1);
        assert_eq!(q.project(&[Scalar::one(), Scalar::zero()]), q.project(&[Scalar::zero(), Scalar::one()]));
        assert!(q.projection().mul(q.section()).is_identity());
    }

    #[test]
    fn solve_consistency() {
        let a = m(&[&[1, 1], &[2, 2]]);
        assert!(solve(&a, &[Scalar::one(), Scalar::from_int(3)]).is_none());
        let s = solve(&a, &[Scalar::one(), Scalar::from_int(2)]).unwrap();
        assert_eq!(a.mul_vec(&s.particular), vec![Scalar::one(), Scalar::from_int(2)]);
        assert_eq!(s.kernel.dim(), 1);
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::from_rows(&m(&[&[1, 0, 0], &[0, 1, 0]]));
        let b = Subspace::from_rows(&m(&[&[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(a.intersection(&b), Subspace::from_rows(&m(&[&[0, 1, 0]])));
        assert_eq!(a.sum(&b), Subspace::full(3));
    }
}
