//! Exact linear algebra over ℚ(i).

mod matrix;
mod scalar;
mod subspace;

pub use matrix::Matrix;
pub use scalar::Scalar;
pub use subspace::{kernel_basis, quotient, rank, rref, solve, try_inverse, Echelon, QuotientSpace, Solution, Subspace};

/// Applies `op` to tensor slot `slot` of a vector in `dims[0] ⊗ … ⊗ dims[k-1]`
/// (row-major), leaving the other slots alone. `op` maps `dims[slot]` to
/// `op.rows()`.
pub fn apply_slot(v: &[Scalar], dims: &[usize], slot: usize, op: &Matrix) -> Vec<Scalar> {
    assert_eq!(op.cols(), dims[slot], "operator does not fit the slot");
    let outer: usize = dims[..slot].iter().product();
    let inner: usize = dims[slot + 1..].iter().product();
    let d = dims[slot];
    let d2 = op.rows();
    let mut out = vec![Scalar::zero(); outer * d2 * inner];
    for o in 0..outer {
        for k in 0..d {
            for i in 0..inner {
                let x = &v[(o * d + k) * inner + i];
                if x.is_zero() {
                    continue;
                }
                for r in 0..d2 {
                    let a = op.get(r, k);
                    if !a.is_zero() {
                        out[(o * d2 + r) * inner + i] += &(a * x);
                    }
                }
            }
        }
    }
    out
}

/// `a ⊗ b` for vectors with the row-major convention.
pub fn kron_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(if x.is_zero() || y.is_zero() { Scalar::zero() } else { x * y });
        }
    }
    out
}

/// Unit vector `e_k` in dimension `n`.
pub fn unit_vec(n: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[k] = Scalar::one();
    v
}

pub fn zero_vec(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); n]
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn add_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(a: &[Scalar], s: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * s).collect()
}

/// First nonzero coordinate of `v`, used as a witness in reports.
pub fn first_nonzero(v: &[Scalar]) -> Option<(usize, Scalar)> {
    v.iter().enumerate().find(|(_, x)| !x.is_zero()).map(|(k, x)| (k, x.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apply_slot_matches_kron() {
        let a = Matrix::from_ints(&[&[1, 2], &[0, 1], &[3, 0]]);
        let v: Vec<Scalar> = (0..6).map(Scalar::from_int).collect();
        // slot 0 of 2⊗3 with a 2×2 map equals (op ⊗ I3) v
        let op = Matrix::from_ints(&[&[0, 1], &[1, 1]]);
        let want = op.kron(&Matrix::identity(3)).mul_vec(&v);
        assert_eq!(apply_slot(&v, &[2, 3], 0, &op), want);
        let want = Matrix::identity(2).kron(&a.transpose()).mul_vec(&v);
        assert_eq!(apply_slot(&v, &[2, 3], 1, &a.transpose()), want);
    }
}
