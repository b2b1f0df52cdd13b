//! A-rings and A-corings by structure tensors, their axiom engines,
//! Takeuchi products and the convolution-inverse solver.

use crate::bimodule::{tensor_projector, Action, BimoduleConvention, StructuredBimodule};
use crate::error::StructureError;
use crate::linalg::{apply_slot, is_zero_vec, kernel_basis, kron_vec, rank, solve, sub_vec, unit_vec, Matrix, Scalar, Subspace};
use crate::report::{ensure, ensure_zero, Report, Witness};

/// A finite-dimensional associative algebra: `mul[k, i·n + j]` is the
/// coefficient of e_k in e_i e_j.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Algebra {
    dim: usize,
    mul: Matrix,
    unit: Vec<Scalar>,
}

impl Algebra {
    pub fn new(mul: Matrix, unit: Vec<Scalar>) -> Result<Self, StructureError> {
        let n = unit.len();
        if mul.shape() != (n, n * n) {
            return Err(StructureError::Shape(format!("multiplication must be {n}×{}, got {:?}", n * n, mul.shape())));
        }
        Ok(Algebra { dim: n, mul, unit })
    }

    /// Algebra from a basis product rule returning sparse (index, coefficient) terms.
    pub fn from_table(dim: usize, unit: Vec<Scalar>, rule: impl Fn(usize, usize) -> Vec<(usize, Scalar)>) -> Self {
        let mut mul = Matrix::zeros(dim, dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for (k, c) in rule(i, j) {
                    mul.add_at(k, i * dim + j, &c);
                }
            }
        }
        Algebra { dim, mul, unit }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mul_tensor(&self) -> &Matrix {
        &self.mul
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.mul.column(i * self.dim + j)
    }

    pub fn product(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim;
        let mut out = vec![Scalar::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let c = x * y;
                for (k, slot) in out.iter_mut().enumerate() {
                    let m = self.mul.get(k, i * n + j);
                    if !m.is_zero() {
                        *slot += &(&c * m);
                    }
                }
            }
        }
        out
    }

    /// The operator x ↦ a x.
    pub fn left_mul(&self, a: &[Scalar]) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zeros(n, n);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                for k in 0..n {
                    let c = self.mul.get(k, i * n + j);
                    if !c.is_zero() {
                        m.add_at(k, j, &(x * c));
                    }
                }
            }
        }
        m
    }

    /// The operator x ↦ x b.
    pub fn right_mul(&self, b: &[Scalar]) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zeros(n, n);
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            for i in 0..n {
                for k in 0..n {
                    let c = self.mul.get(k, i * n + j);
                    if !c.is_zero() {
                        m.add_at(k, i, &(y * c));
                    }
                }
            }
        }
        m
    }

    /// Factorwise product on `H^{⊗r}`: (a₁⊗…)(b₁⊗…) = a₁b₁ ⊗ ….
    pub fn tensor_product(&self, u: &[Scalar], v: &[Scalar], factors: usize) -> Vec<Scalar> {
        let n = self.dim;
        let total = n.pow(factors as u32);
        let mut out = vec![Scalar::zero(); total];
        let digits = |mut idx: usize| {
            let mut d = vec![0; factors];
            for slot in d.iter_mut().rev() {
                *slot = idx % n;
                idx /= n;
            }
            d
        };
        for (p, x) in u.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let dp = digits(p);
            for (q, y) in v.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let dq = digits(q);
                let mut acc = vec![x * y];
                for f in 0..factors {
                    acc = kron_vec(&acc, &self.basis_product(dp[f], dq[f]));
                }
                for (o, c) in out.iter_mut().zip(&acc) {
                    if !c.is_zero() {
                        *o += c;
                    }
                }
            }
        }
        out
    }

    /// Associativity and two-sided unitality on basis elements.
    pub fn check(&self, report: &mut Report) {
        let n = self.dim;
        let left: Vec<Matrix> = (0..n).map(|i| self.left_mul(&unit_vec(n, i))).collect();
        report.check("associativity", || {
            for i in 0..n {
                for j in 0..n {
                    let ij = self.basis_product(i, j);
                    let l_ij = self.left_mul(&ij);
                    let lhs = l_ij;
                    let rhs = left[i].mul(&left[j]);
                    if lhs != rhs {
                        let k = (0..n).find(|&k| lhs.column(k) != rhs.column(k)).unwrap_or(0);
                        return Err(Witness::new(
                            format!("(e{i} e{j}) e{k} vs e{i} (e{j} e{k})"),
                            sub_vec(&lhs.column(k), &rhs.column(k)),
                        ));
                    }
                }
            }
            Ok(())
        });
        report.check("left unit", || {
            let l = self.left_mul(&self.unit);
            for j in 0..n {
                ensure_zero(&sub_vec(&l.column(j), &unit_vec(n, j)), || format!("1·e{j}"))?;
            }
            Ok(())
        });
        report.check("right unit", || {
            let r = self.right_mul(&self.unit);
            for j in 0..n {
                ensure_zero(&sub_vec(&r.column(j), &unit_vec(n, j)), || format!("e{j}·1"))?;
            }
            Ok(())
        });
    }
}

/// An A-ring: an algebra with a unit map η: A → H whose images act on both
/// sides according to `convention`.
#[derive(Clone, Debug)]
pub struct ARing {
    pub carrier: StructuredBimodule,
    pub convention: BimoduleConvention,
    pub algebra: Algebra,
    /// Column x is η(e_x).
    pub unit_map: Matrix,
}

fn mul_operator(alg: &Algebra, a: Action, v: &[Scalar]) -> Matrix {
    match a {
        Action::LeftSource | Action::LeftTarget => alg.left_mul(v),
        Action::RightSource | Action::RightTarget => alg.right_mul(v),
    }
}

pub fn check_ring(r: &ARing) -> Report {
    let mut rep = Report::new("A-ring");
    let n = r.algebra.dim();
    let k = r.carrier.base().dim();
    r.algebra.check(&mut rep);
    let eta: Vec<Vec<Scalar>> = (0..k).map(|x| r.unit_map.column(x)).collect();
    rep.check("unit map multiplicative", || {
        for x in 0..k {
            for y in 0..k {
                let p = r.algebra.product(&eta[x], &eta[y]);
                let want = if x == y { eta[x].clone() } else { vec![Scalar::zero(); n] };
                ensure_zero(&sub_vec(&p, &want), || format!("η(e_{x}) η(e_{y})"))?;
            }
        }
        Ok(())
    });
    rep.check("unit map unital", || {
        let mut s = vec![Scalar::zero(); n];
        for e in &eta {
            s = crate::linalg::add_vec(&s, e);
        }
        ensure_zero(&sub_vec(&s, r.algebra.unit()), || "Σ η(e_x) − 1".into())
    });
    rep.check("actions come from the unit map", || {
        for x in 0..k {
            for a in [r.convention.left, r.convention.right] {
                let want = mul_operator(&r.algebra, a, &eta[x]);
                let got = r.carrier.act(a, x);
                ensure(*got == want, || format!("action {a} of e_{x}"))?;
            }
        }
        Ok(())
    });
    rep.check("multiplication is balanced", || {
        for x in 0..k {
            let ra = r.carrier.act(r.convention.right, x);
            let la = r.carrier.act(r.convention.left, x);
            for i in 0..n {
                let a = ra.column(i);
                for j in 0..n {
                    let b = la.column(j);
                    let lhs = r.algebra.product(&a, &unit_vec(n, j));
                    let rhs = r.algebra.product(&unit_vec(n, i), &b);
                    ensure_zero(&sub_vec(&lhs, &rhs), || format!("(e{i}◁e_{x})e{j} − e{i}(e_{x}▷e{j})"))?;
                }
            }
        }
        Ok(())
    });
    rep
}

/// An A-coring. `comul` stores, column by column, representatives in the
/// plain tensor square; canonical ones are fixed by the balanced projector.
#[derive(Clone, Debug)]
pub struct ACoring {
    pub carrier: StructuredBimodule,
    pub convention: BimoduleConvention,
    pub comul: Matrix,
    /// Row x, column h: the e_x-coefficient of ε(h).
    pub counit: Matrix,
}

impl ACoring {
    pub fn projector(&self) -> Matrix {
        tensor_projector(&self.carrier, self.convention.right, &self.carrier, self.convention.left)
    }
}

/// Projects slots (i, i+1) of an element of `H^{⊗r}` with the two-factor projector `p`.
pub fn project_pair(v: &[Scalar], n: usize, factors: usize, i: usize, p: &Matrix) -> Vec<Scalar> {
    let mut dims = vec![n; factors];
    dims.splice(i..i + 2, [n * n]);
    apply_slot(v, &dims, i, p)
}

/// Counit operator v ↦ Σ_x ε(v₁)_x (e_x ▷ v₂), as a matrix n × n².
fn counit_contraction(counit: &Matrix, actions: &[Matrix], first: bool) -> Matrix {
    let n = counit.cols();
    let mut out = Matrix::zeros(n, n * n);
    for (x, act) in actions.iter().enumerate() {
        let eps_x = Matrix::from_rows(vec![counit.row(x).to_vec()]);
        let term = if first { eps_x.kron(act) } else { act.kron(&eps_x) };
        out = out.add(&term);
    }
    out
}

pub fn check_coring(c: &ACoring) -> Report {
    let mut rep = Report::new("A-coring");
    let n = c.carrier.dim();
    let k = c.carrier.base().dim();
    let p = c.projector();
    let d = &c.comul;
    rep.check("comultiplication is canonical", || {
        for h in 0..n {
            let v = d.column(h);
            ensure_zero(&sub_vec(&p.mul_vec(&v), &v), || format!("Δ(e{h}) off its canonical representative"))?;
        }
        Ok(())
    });
    rep.check("coassociativity", || {
        for h in 0..n {
            let v = d.column(h);
            let a = apply_slot(&v, &[n, n], 0, d);
            let b = apply_slot(&v, &[n, n], 1, d);
            let diff = sub_vec(&a, &b);
            let diff = project_pair(&project_pair(&diff, n, 3, 0, &p), n, 3, 1, &p);
            ensure_zero(&diff, || format!("(Δ⊗id)Δ(e{h}) − (id⊗Δ)Δ(e{h})"))?;
        }
        Ok(())
    });
    let left = counit_contraction(&c.counit, c.carrier.action(c.convention.left), true).mul(d);
    rep.check("left counit", || {
        for h in 0..n {
            ensure_zero(&sub_vec(&left.column(h), &unit_vec(n, h)), || format!("ε(h₁)·h₂ − h at h = e{h}"))?;
        }
        Ok(())
    });
    let right = counit_contraction(&c.counit, c.carrier.action(c.convention.right), false).mul(d);
    rep.check("right counit", || {
        for h in 0..n {
            ensure_zero(&sub_vec(&right.column(h), &unit_vec(n, h)), || format!("h₁·ε(h₂) − h at h = e{h}"))?;
        }
        Ok(())
    });
    rep.check("counit is a bimodule map", || {
        for x in 0..k {
            let l = c.counit.mul(c.carrier.act(c.convention.left, x));
            let r = c.counit.mul(c.carrier.act(c.convention.right, x));
            for h in 0..n {
                let eh = c.counit.column(h);
                let mut want = vec![Scalar::zero(); k];
                want[x] = eh[x].clone();
                ensure_zero(&sub_vec(&l.column(h), &want), || format!("ε(e_{x}▷e{h}) − e_{x}ε(e{h})"))?;
                ensure_zero(&sub_vec(&r.column(h), &want), || format!("ε(e{h}◁e_{x}) − ε(e{h})e_{x}"))?;
            }
        }
        Ok(())
    });
    let id = Matrix::identity(n);
    rep.check("comultiplication is a bimodule map", || {
        for x in 0..k {
            let la = c.carrier.act(c.convention.left, x);
            let ra = c.carrier.act(c.convention.right, x);
            let l = p.mul(&d.mul(la)).sub(&p.mul(&la.kron(&id)).mul(d));
            let r = p.mul(&d.mul(ra)).sub(&p.mul(&id.kron(ra)).mul(d));
            for h in 0..n {
                ensure_zero(&l.column(h), || format!("Δ(e_{x}▷e{h}) − e_{x}▷Δ(e{h})"))?;
                ensure_zero(&r.column(h), || format!("Δ(e{h}◁e_{x}) − Δ(e{h})◁e_{x}"))?;
            }
        }
        Ok(())
    });
    rep
}

/// Which bialgebroid variant a Takeuchi product belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// The Takeuchi product as a subspace of canonical representatives in the
/// plain tensor square.
#[derive(Clone, Debug)]
pub struct Takeuchi {
    pub projector: Matrix,
    pub subspace: Subspace,
}

/// Right: {Σ b⊗b' : s(r)b⊗b' = b⊗t(r)b'}; left: {b t(r)⊗b' = b⊗b' s(r)}.
/// The carrier must carry the actions of the bialgebroid's s and t.
pub fn takeuchi_product(carrier: &StructuredBimodule, side: Side) -> Takeuchi {
    let n = carrier.dim();
    let (conv, a, b) = match side {
        Side::Right => (BimoduleConvention::RIGHT_CORING, Action::LeftSource, Action::LeftTarget),
        Side::Left => (BimoduleConvention::LEFT_CORING, Action::RightTarget, Action::RightSource),
    };
    let p = tensor_projector(carrier, conv.right, carrier, conv.left);
    let id = Matrix::identity(n);
    let mut blocks = vec![Matrix::identity(n * n).sub(&p)];
    for x in 0..carrier.base().dim() {
        blocks.push(p.mul(&carrier.act(a, x).kron(&id).sub(&id.kron(carrier.act(b, x)))));
    }
    let refs: Vec<&Matrix> = blocks.iter().collect();
    Takeuchi { subspace: kernel_basis(&Matrix::vstack(&refs)), projector: p }
}

/// Find g with `μ(g ⊗ f)Δ_a = T_a` and `μ(f ⊗ g)Δ_b = T_b`, subject to
/// `g∘A = B∘g` for every listed pair.
#[derive(Clone, Debug)]
pub struct ConvolutionProblem {
    pub algebra: Algebra,
    pub left_delta: Matrix,
    pub left_target: Matrix,
    pub right_delta: Matrix,
    pub right_target: Matrix,
    pub intertwiners: Vec<(Matrix, Matrix)>,
}

#[derive(Clone, Debug)]
pub enum ConvolutionOutcome {
    Unique(Matrix),
    /// rank [A | b] exceeds rank A.
    Inconsistent { rank: usize, augmented_rank: usize },
    NotUnique { particular: Matrix, kernel_dim: usize },
}

impl ConvolutionOutcome {
    pub fn solution(&self) -> Option<&Matrix> {
        match self {
            ConvolutionOutcome::Unique(g) => Some(g),
            _ => None,
        }
    }
}

fn vec_to_matrix(v: &[Scalar], n: usize) -> Matrix {
    Matrix::from_fn(n, n, |r, c| v[r * n + c].clone())
}

pub fn convolution_inverse(p: &ConvolutionProblem, f: &Matrix) -> ConvolutionOutcome {
    let alg = &p.algebra;
    let n = alg.dim();
    let unknowns = n * n;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    // μ(g⊗f)Δ(h): coefficient of g[r,i] is Σ_j Δ_{ij,h} e_r (f e_j)
    let rights: Vec<Matrix> = (0..n).map(|j| alg.right_mul(&f.column(j))).collect();
    let lefts: Vec<Matrix> = (0..n).map(|i| alg.left_mul(&f.column(i))).collect();
    for h in 0..n {
        let mut block = vec![vec![Scalar::zero(); unknowns]; n];
        for i in 0..n {
            for j in 0..n {
                let c = p.left_delta.get(i * n + j, h);
                if c.is_zero() {
                    continue;
                }
                for r in 0..n {
                    for (kk, row) in block.iter_mut().enumerate() {
                        let m = rights[j].get(kk, r);
                        if !m.is_zero() {
                            row[r * n + i] += &(c * m);
                        }
                    }
                }
            }
        }
        for (kk, row) in block.into_iter().enumerate() {
            rows.push(row);
            rhs.push(p.left_target.get(kk, h).clone());
        }
    }
    // μ(f⊗g)Δ(h): coefficient of g[r,j] is Σ_i Δ_{ij,h} (f e_i) e_r
    for h in 0..n {
        let mut block = vec![vec![Scalar::zero(); unknowns]; n];
        for i in 0..n {
            for j in 0..n {
                let c = p.right_delta.get(i * n + j, h);
                if c.is_zero() {
                    continue;
                }
                for r in 0..n {
                    for (kk, row) in block.iter_mut().enumerate() {
                        let m = lefts[i].get(kk, r);
                        if !m.is_zero() {
                            row[r * n + j] += &(c * m);
                        }
                    }
                }
            }
        }
        for (kk, row) in block.into_iter().enumerate() {
            rows.push(row);
            rhs.push(p.right_target.get(kk, h).clone());
        }
    }
    // g A − B g = 0, entry (a, c): Σ_r g[a,r] A[r,c] − Σ_r B[a,r] g[r,c]
    for (a_m, b_m) in &p.intertwiners {
        for a in 0..n {
            for c in 0..n {
                let mut row = vec![Scalar::zero(); unknowns];
                for r in 0..n {
                    let x = a_m.get(r, c);
                    if !x.is_zero() {
                        row[a * n + r] += x;
                    }
                    let y = b_m.get(a, r);
                    if !y.is_zero() {
                        row[r * n + c] -= y;
                    }
                }
                if !is_zero_vec(&row) {
                    rows.push(row);
                    rhs.push(Scalar::zero());
                }
            }
        }
    }
    let system = Matrix::from_rows(rows);
    match solve(&system, &rhs) {
        None => {
            let aug = Matrix::hstack(&[&system, &Matrix::column_vector(rhs)]);
            ConvolutionOutcome::Inconsistent { rank: rank(&system), augmented_rank: rank(&aug) }
        }
        Some(sol) if sol.kernel.dim() == 0 => ConvolutionOutcome::Unique(vec_to_matrix(&sol.particular, n)),
        Some(sol) => ConvolutionOutcome::NotUnique { particular: vec_to_matrix(&sol.particular, n), kernel_dim: sol.kernel.dim() },
    }
}

/// `μ ∘ (f ⊗ g) ∘ Δ` as an n×n matrix.
pub fn convolve(alg: &Algebra, f: &Matrix, g: &Matrix, delta: &Matrix) -> Matrix {
    let n = alg.dim();
    let mut out = Matrix::zeros(n, n);
    for h in 0..n {
        let v = delta.column(h);
        let w = apply_slot(&apply_slot(&v, &[n, n], 0, f), &[n, n], 1, g);
        let prod = alg.mul_tensor().mul_vec(&w);
        for (kk, c) in prod.into_iter().enumerate() {
            out.set(kk, h, c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::BaseAlgebra;

    fn group_algebra(order: usize) -> Algebra {
        Algebra::from_table(order, unit_vec(order, 0), |i, j| vec![((i + j) % order, Scalar::one())])
    }

    fn grouplike(n: usize) -> Matrix {
        Matrix::from_fn(n * n, n, |r, c| if r == c * n + c { Scalar::one() } else { Scalar::zero() })
    }

    fn single(n: usize) -> StructuredBimodule {
        StructuredBimodule::uniform(BaseAlgebra::singleton(), vec![Matrix::identity(n)]).unwrap()
    }

    #[test]
    fn group_algebra_ring_passes() {
        let alg = group_algebra(2);
        let ring = ARing {
            carrier: single(2),
            convention: BimoduleConvention::RING,
            unit_map: Matrix::column_vector(alg.unit().to_vec()),
            algebra: alg,
        };
        assert!(check_ring(&ring).passed());
    }

    #[test]
    fn grouplike_coring_and_zero_counit() {
        let c = ACoring {
            carrier: single(2),
            convention: BimoduleConvention::RIGHT_CORING,
            comul: grouplike(2),
            counit: Matrix::from_ints(&[&[1, 1]]),
        };
        assert!(check_coring(&c).passed());
        let bad = ACoring { counit: Matrix::zeros(1, 2), ..c };
        let r = check_coring(&bad);
        assert_eq!(r.row("left counit").unwrap().status, crate::report::Status::Fail);
        assert_eq!(r.row("right counit").unwrap().status, crate::report::Status::Fail);
    }

    #[test]
    fn antipode_of_cyclic_group() {
        let alg = group_algebra(3);
        let d = grouplike(3);
        let target = Matrix::from_fn(3, 3, |r, _| if r == 0 { Scalar::one() } else { Scalar::zero() });
        let p = ConvolutionProblem {
            algebra: alg.clone(),
            left_delta: d.clone(),
            left_target: target.clone(),
            right_delta: d,
            right_target: target,
            intertwiners: vec![],
        };
        let s = convolution_inverse(&p, &Matrix::identity(3));
        let s = s.solution().expect("group algebras have antipodes");
        // g ↦ g⁻¹
        assert_eq!(s, &Matrix::from_ints(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]));
    }

    #[test]
    fn idempotent_monoid_has_no_antipode() {
        // basis 1, m with m² = m
        let alg = Algebra::from_table(2, unit_vec(2, 0), |i, j| vec![(if i + j == 0 { 0 } else { 1 }, Scalar::one())]);
        let target = Matrix::from_ints(&[&[1, 1], &[0, 0]]);
        let p = ConvolutionProblem {
            algebra: alg,
            left_delta: grouplike(2),
            left_target: target.clone(),
            right_delta: grouplike(2),
            right_target: target,
            intertwiners: vec![],
        };
        match convolution_inverse(&p, &Matrix::identity(2)) {
            ConvolutionOutcome::Inconsistent { rank, augmented_rank } => assert!(augmented_rank > rank),
            other => panic!("expected inconsistency, got {other:?}"),
        }
    }

    #[test]
    fn takeuchi_is_everything_over_a_point() {
        let t = takeuchi_product(&single(2), Side::Right);
        assert_eq!(t.subspace.dim(), 4);
    }
}
