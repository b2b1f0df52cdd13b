//! Left/right bialgebroids, Hopf algebroids and their morphisms.

use crate::bimodule::{tensor_projector, Action, BaseAlgebra, BimoduleConvention, StructuredBimodule};
use crate::error::StructureError;
use crate::linalg::{add_vec, apply_slot, rank, sub_vec, try_inverse, unit_vec, Matrix, Scalar, Subspace};
use crate::report::{ensure, ensure_zero, Report, Witness};
use crate::ring::{
    check_coring, check_ring, convolution_inverse, convolve, project_pair, takeuchi_product, ACoring, ARing, Algebra,
    ConvolutionOutcome, ConvolutionProblem, Side,
};

/// One bialgebroid structure on an algebra over the base k^X.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bialgebroid {
    pub side: Side,
    pub base: BaseAlgebra,
    pub algebra: Algebra,
    /// Column x is s(e_x).
    pub source: Matrix,
    pub target: Matrix,
    /// Column h is a representative of Δ(e_h) in H ⊗ H.
    pub delta: Matrix,
    /// Row x, column h: e_x-coefficient of ε(e_h).
    pub counit: Matrix,
}

impl Bialgebroid {
    pub fn new(
        side: Side,
        base: BaseAlgebra,
        algebra: Algebra,
        source: Matrix,
        target: Matrix,
        delta: Matrix,
        counit: Matrix,
    ) -> Result<Self, StructureError> {
        let n = algebra.dim();
        let k = base.dim();
        let shapes = [
            ("source", &source, (n, k)),
            ("target", &target, (n, k)),
            ("coproduct", &delta, (n * n, n)),
            ("counit", &counit, (k, n)),
        ];
        for (name, m, want) in shapes {
            if m.shape() != want {
                return Err(StructureError::Shape(format!("{} {name} must be {want:?}, got {:?}", side.name(), m.shape())));
            }
        }
        Ok(Bialgebroid { side, base, algebra, source, target, delta, counit })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn source_of(&self, x: usize) -> Vec<Scalar> {
        self.source.column(x)
    }

    pub fn target_of(&self, x: usize) -> Vec<Scalar> {
        self.target.column(x)
    }

    /// H with λs, λt, ρs, ρt given by multiplication with s(e_x), t(e_x).
    pub fn carrier(&self) -> StructuredBimodule {
        let k = self.base.dim();
        let src: Vec<Vec<Scalar>> = (0..k).map(|x| self.source_of(x)).collect();
        let tgt: Vec<Vec<Scalar>> = (0..k).map(|x| self.target_of(x)).collect();
        let actions = [
            src.iter().map(|v| self.algebra.left_mul(v)).collect(),
            tgt.iter().map(|v| self.algebra.left_mul(v)).collect(),
            src.iter().map(|v| self.algebra.right_mul(v)).collect(),
            tgt.iter().map(|v| self.algebra.right_mul(v)).collect(),
        ];
        StructuredBimodule::new_unchecked(self.base.clone(), self.dim(), actions).expect("shapes were validated")
    }

    pub fn coring_convention(&self) -> BimoduleConvention {
        match self.side {
            Side::Left => BimoduleConvention::LEFT_CORING,
            Side::Right => BimoduleConvention::RIGHT_CORING,
        }
    }

    /// Projector onto canonical representatives of H ⊗_A H for this coring.
    pub fn projector(&self) -> Matrix {
        let c = self.carrier();
        let conv = self.coring_convention();
        tensor_projector(&c, conv.right, &c, conv.left)
    }

    pub fn ring(&self) -> ARing {
        ARing {
            carrier: self.carrier(),
            convention: BimoduleConvention::RING,
            algebra: self.algebra.clone(),
            unit_map: self.source.clone(),
        }
    }

    pub fn coring(&self) -> ACoring {
        ACoring {
            carrier: self.carrier(),
            convention: self.coring_convention(),
            comul: self.delta.clone(),
            counit: self.counit.clone(),
        }
    }

    /// ε(h) as a vector in the base.
    pub fn counit_of(&self, h: &[Scalar]) -> Vec<Scalar> {
        self.counit.mul_vec(h)
    }

    /// Image of a base element under s.
    pub fn source_map(&self, f: &[Scalar]) -> Vec<Scalar> {
        self.source.mul_vec(f)
    }
}

/// Checks that `map` (columns = images of e_x) is a unital algebra map k^X → H.
pub fn check_algebra_map(rep: &mut Report, name: &str, alg: &Algebra, map: &Matrix) {
    let k = map.cols();
    let n = alg.dim();
    rep.check(format!("{name} is multiplicative"), || {
        for x in 0..k {
            for y in 0..k {
                let p = alg.product(&map.column(x), &map.column(y));
                let want = if x == y { map.column(x) } else { vec![Scalar::zero(); n] };
                ensure_zero(&sub_vec(&p, &want), || format!("{name}(e_{x}){name}(e_{y})"))?;
            }
        }
        Ok(())
    });
    rep.check(format!("{name} is unital"), || {
        let mut s = vec![Scalar::zero(); n];
        for x in 0..k {
            s = add_vec(&s, &map.column(x));
        }
        ensure_zero(&sub_vec(&s, alg.unit()), || format!("Σ {name}(e_x) − 1"))
    });
}

fn residual_matrix(rep: &mut Report, axiom: &str, lhs: &Matrix, rhs: &Matrix, input: &str) -> bool {
    rep.check(axiom, || {
        if lhs.shape() != rhs.shape() {
            return Err(Witness::note(format!("shape {:?} vs {:?}", lhs.shape(), rhs.shape())));
        }
        for c in 0..lhs.cols() {
            ensure_zero(&sub_vec(&lhs.column(c), &rhs.column(c)), || format!("{input}{c}"))?;
        }
        Ok(())
    })
}

pub fn check_bialgebroid(b: &Bialgebroid) -> Report {
    let side = b.side.name();
    let mut rep = Report::new(format!("{side} bialgebroid"));
    let n = b.dim();
    let k = b.base.dim();
    let alg = &b.algebra;
    check_algebra_map(&mut rep, "s", alg, &b.source);
    check_algebra_map(&mut rep, "t", alg, &b.target);
    rep.check("source and target images commute", || {
        for x in 0..k {
            for y in 0..k {
                let (s, t) = (b.source_of(x), b.target_of(y));
                let d = sub_vec(&alg.product(&s, &t), &alg.product(&t, &s));
                ensure_zero(&d, || format!("[s(e_{x}), t(e_{y})]"))?;
            }
        }
        Ok(())
    });
    let carrier = b.carrier();
    rep.check("base actions form commuting idempotent families", || match carrier.defect() {
        None => Ok(()),
        Some(d) => Err(Witness::note(d)),
    });
    rep.absorb("ring", check_ring(&b.ring()));
    rep.absorb("coring", check_coring(&b.coring()));

    // (b) Takeuchi corestriction
    let tk = takeuchi_product(&carrier, b.side);
    let p = &tk.projector;
    let deltas: Vec<Vec<Scalar>> = (0..n).map(|h| p.mul_vec(&b.delta.column(h))).collect();
    rep.check("coproduct lands in the Takeuchi product", || {
        for (h, d) in deltas.iter().enumerate() {
            ensure(tk.subspace.contains(d), || format!("Δ(e{h}) outside the Takeuchi product"))?;
        }
        Ok(())
    });
    rep.check("Takeuchi product is closed under multiplication", || {
        let basis = tk.subspace.basis_vectors();
        for (i, u) in basis.iter().enumerate() {
            for (j, v) in basis.iter().enumerate() {
                let w = p.mul_vec(&alg.tensor_product(u, v, 2));
                ensure(tk.subspace.contains(&w), || format!("product of Takeuchi basis vectors {i} and {j}"))?;
            }
        }
        Ok(())
    });
    rep.check("coproduct is multiplicative", || {
        for a in 0..n {
            for c in 0..n {
                let lhs = p.mul_vec(&b.delta.mul_vec(&alg.basis_product(a, c)));
                let rhs = p.mul_vec(&alg.tensor_product(&deltas[a], &deltas[c], 2));
                ensure_zero(&sub_vec(&lhs, &rhs), || format!("Δ(e{a}e{c}) − Δ(e{a})Δ(e{c})"))?;
            }
        }
        Ok(())
    });
    rep.check("coproduct is unital", || {
        let one = alg.unit();
        let lhs = p.mul_vec(&b.delta.mul_vec(one));
        let rhs = p.mul_vec(&crate::linalg::kron_vec(one, one));
        ensure_zero(&sub_vec(&lhs, &rhs), || "Δ(1) − 1⊗1".into())
    });

    // (c) the counit extends the regular action to an (H, s)-action
    rep.check("counit inverts the source", || {
        let es = b.counit.mul(&b.source);
        for x in 0..k {
            ensure_zero(&sub_vec(&es.column(x), &unit_vec(k, x)), || format!("ε(s(e_{x})) − e_{x}"))?;
        }
        Ok(())
    });
    rep.check("counit extends the regular action", || {
        for x in 0..k {
            let sx = b.source_of(x);
            for h in 0..n {
                for h2 in 0..n {
                    let eh = unit_vec(n, h);
                    let (lhs, rhs) = match b.side {
                        Side::Right => {
                            // ε(s(ε(s(e_x)h)) h') = ε(s(e_x) h h')
                            let inner = b.source_map(&b.counit_of(&alg.product(&sx, &eh)));
                            let lhs = b.counit_of(&alg.product(&inner, &unit_vec(n, h2)));
                            let rhs = b.counit_of(&alg.product(&sx, &alg.basis_product(h, h2)));
                            (lhs, rhs)
                        }
                        Side::Left => {
                            // ε(h s(ε(h' s(e_x)))) = ε(h h' s(e_x))
                            let inner = b.source_map(&b.counit_of(&alg.product(&unit_vec(n, h2), &sx)));
                            let lhs = b.counit_of(&alg.product(&eh, &inner));
                            let rhs = b.counit_of(&alg.product(&alg.basis_product(h, h2), &sx));
                            (lhs, rhs)
                        }
                    };
                    ensure_zero(&sub_vec(&lhs, &rhs), || format!("action of e{h}, e{h2} on e_{x}"))?;
                }
            }
        }
        Ok(())
    });
    rep
}

/// (H_L, H_R, S) over one base, both sides on the same algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfAlgebroid {
    pub left: Bialgebroid,
    pub right: Bialgebroid,
    pub antipode: Matrix,
}

impl HopfAlgebroid {
    /// Checks shapes and sides only; invertibility of S and all axioms are
    /// report rows of `check_hopf_algebroid`.
    pub fn new(left: Bialgebroid, right: Bialgebroid, antipode: Matrix) -> Result<Self, StructureError> {
        if left.side != Side::Left || right.side != Side::Right {
            return Err(StructureError::Invalid("expected a left and a right bialgebroid".into()));
        }
        if left.base != right.base {
            return Err(StructureError::BaseMismatch);
        }
        let n = left.dim();
        if right.dim() != n || antipode.shape() != (n, n) {
            return Err(StructureError::Shape("both sides and the antipode must act on one space".into()));
        }
        Ok(HopfAlgebroid { left, right, antipode })
    }

    pub fn dim(&self) -> usize {
        self.left.dim()
    }

    pub fn base(&self) -> &BaseAlgebra {
        &self.left.base
    }

    pub fn algebra(&self) -> &Algebra {
        &self.left.algebra
    }

    pub fn antipode_inverse(&self) -> Option<Matrix> {
        try_inverse(&self.antipode)
    }

    /// Δ_L with canonical representatives.
    pub fn delta_left(&self) -> Matrix {
        self.left.projector().mul(&self.left.delta)
    }

    pub fn delta_right(&self) -> Matrix {
        self.right.projector().mul(&self.right.delta)
    }

    /// The linear system whose unique solution should be S.
    pub fn antipode_problem(&self) -> ConvolutionProblem {
        let l = &self.left;
        let r = &self.right;
        let lc = l.carrier();
        let rc = r.carrier();
        let k = self.base().dim();
        let mut intertwiners = Vec::new();
        for x in 0..k {
            // S(t_L(l) h) = S(h) s_L(l) and S(h t_R(r)) = s_R(r) S(h)
            intertwiners.push((lc.act(Action::LeftTarget, x).clone(), lc.act(Action::RightSource, x).clone()));
            intertwiners.push((rc.act(Action::RightTarget, x).clone(), rc.act(Action::LeftSource, x).clone()));
        }
        ConvolutionProblem {
            algebra: self.algebra().clone(),
            left_delta: self.delta_left(),
            left_target: r.source.mul(&r.counit),
            right_delta: self.delta_right(),
            right_target: l.source.mul(&l.counit),
            intertwiners,
        }
    }
}

fn flip(n: usize) -> Matrix {
    Matrix::from_fn(n * n, n * n, |r, c| {
        let (i, j) = (c / n, c % n);
        if r == j * n + i {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}

fn is_idempotent(m: &Matrix) -> bool {
    m.mul(m) == *m
}

pub fn check_hopf_algebroid(h: &HopfAlgebroid) -> Report {
    let mut rep = Report::new("Hopf algebroid");
    let (l, r) = (&h.left, &h.right);
    let n = h.dim();
    let k = h.base().dim();
    rep.absorb("left", check_bialgebroid(l));
    rep.absorb("right", check_bialgebroid(r));
    rep.check("both sides share one algebra", || ensure(l.algebra == r.algebra, || "μ_L ≠ μ_R".into()));

    // (a)
    residual_matrix(&mut rep, "s_L ε_L t_R = t_R", &l.source.mul(&l.counit).mul(&r.target), &r.target, "e_");
    residual_matrix(&mut rep, "t_L ε_L s_R = s_R", &l.target.mul(&l.counit).mul(&r.source), &r.source, "e_");
    residual_matrix(&mut rep, "s_R ε_R t_L = t_L", &r.source.mul(&r.counit).mul(&l.target), &l.target, "e_");
    residual_matrix(&mut rep, "t_R ε_R s_L = s_L", &r.target.mul(&r.counit).mul(&l.source), &l.source, "e_");

    // (b) mixed coassociativity, in H ⊗_L H ⊗_R H and H ⊗_R H ⊗_L H
    let pl = l.projector();
    let pr = r.projector();
    let dl = pl.mul(&l.delta);
    let dr = pr.mul(&r.delta);
    rep.check("Δ_L and Δ_R commute (H ⊗_L H ⊗_R H)", || {
        for x in 0..n {
            let a = apply_slot(&dr.column(x), &[n, n], 0, &dl);
            let b = apply_slot(&dl.column(x), &[n, n], 1, &dr);
            let d = project_pair(&project_pair(&sub_vec(&a, &b), n, 3, 0, &pl), n, 3, 1, &pr);
            ensure_zero(&d, || format!("(Δ_L⊗id)Δ_R(e{x}) − (id⊗Δ_R)Δ_L(e{x})"))?;
        }
        Ok(())
    });
    rep.check("Δ_R and Δ_L commute (H ⊗_R H ⊗_L H)", || {
        for x in 0..n {
            let a = apply_slot(&dl.column(x), &[n, n], 0, &dr);
            let b = apply_slot(&dr.column(x), &[n, n], 1, &dl);
            let d = project_pair(&project_pair(&sub_vec(&a, &b), n, 3, 0, &pr), n, 3, 1, &pl);
            ensure_zero(&d, || format!("(Δ_R⊗id)Δ_L(e{x}) − (id⊗Δ_L)Δ_R(e{x})"))?;
        }
        Ok(())
    });

    // (c)
    let s = &h.antipode;
    let lc = l.carrier();
    let rc = r.carrier();
    rep.check("S(t_L(l) h t_R(r)) = s_R(r) S(h) s_L(l)", || {
        for x in 0..k {
            let a = s.mul(lc.act(Action::LeftTarget, x)).sub(&lc.act(Action::RightSource, x).mul(s));
            let b = s.mul(rc.act(Action::RightTarget, x)).sub(&rc.act(Action::LeftSource, x).mul(s));
            for c in 0..n {
                ensure_zero(&a.column(c), || format!("S(t_L(e_{x}) e{c}) − S(e{c}) s_L(e_{x})"))?;
                ensure_zero(&b.column(c), || format!("S(e{c} t_R(e_{x})) − s_R(e_{x}) S(e{c})"))?;
            }
        }
        Ok(())
    });

    // (d)
    let id = Matrix::identity(n);
    let alg = h.algebra();
    residual_matrix(&mut rep, "μ_L(S ⊗ id)Δ_L = s_R ε_R", &convolve(alg, s, &id, &dl), &r.source.mul(&r.counit), "e");
    residual_matrix(&mut rep, "μ_R(id ⊗ S)Δ_R = s_L ε_L", &convolve(alg, &id, s, &dr), &l.source.mul(&l.counit), "e");

    // invertibility and the inverse antipode
    let s_inv = try_inverse(s);
    rep.check("antipode is invertible", || ensure(s_inv.is_some(), || format!("rank S = {} < {n}", rank(s))));
    if let Some(si) = &s_inv {
        let fl = flip(n);
        residual_matrix(
            &mut rep,
            "S⁻¹(h_[2]) h_[1] = t_R ε_R(h)",
            &convolve(alg, si, &id, &fl.mul(&dl)),
            &r.target.mul(&r.counit),
            "e",
        );
        residual_matrix(
            &mut rep,
            "h^[2] S⁻¹(h^[1]) = t_L ε_L(h)",
            &convolve(alg, &id, si, &fl.mul(&dr)),
            &l.target.mul(&l.counit),
            "e",
        );
    }
    rep.check("antipode is the unique convolution inverse of the identity", || {
        match convolution_inverse(&h.antipode_problem(), &id) {
            ConvolutionOutcome::Unique(g) => ensure(g == *s, || "solved inverse differs from S".into()),
            ConvolutionOutcome::Inconsistent { rank, augmented_rank } => {
                Err(Witness::note(format!("no convolution inverse: rank {rank} < augmented rank {augmented_rank}")))
            }
            ConvolutionOutcome::NotUnique { kernel_dim, .. } => {
                Err(Witness::note(format!("convolution inverse not unique: kernel dimension {kernel_dim}")))
            }
        }
    });

    // idempotents and image equalities
    for (name, m) in [
        ("s_L ε_L", l.source.mul(&l.counit)),
        ("t_L ε_L", l.target.mul(&l.counit)),
        ("s_R ε_R", r.source.mul(&r.counit)),
        ("t_R ε_R", r.target.mul(&r.counit)),
    ] {
        rep.check(format!("{name} is idempotent"), || ensure(is_idempotent(&m), || name.to_string()));
    }
    rep.check("image s_R = image t_L", || {
        ensure(Subspace::image(&r.source) == Subspace::image(&l.target), || "images differ".into())
    });
    rep.check("image s_L = image t_R", || {
        ensure(Subspace::image(&l.source) == Subspace::image(&r.target), || "images differ".into())
    });
    let idk = Matrix::identity(k);
    residual_matrix(&mut rep, "ε_L s_L = id", &l.counit.mul(&l.source), &idk, "e_");
    residual_matrix(&mut rep, "ε_R s_R = id", &r.counit.mul(&r.source), &idk, "e_");
    let a1 = r.counit.mul(&l.source);
    let a2 = l.counit.mul(&r.target);
    residual_matrix(&mut rep, "(ε_L t_R)(ε_R s_L) = id", &a2.mul(&a1), &idk, "e_");
    residual_matrix(&mut rep, "(ε_R s_L)(ε_L t_R) = id", &a1.mul(&a2), &idk, "e_");
    let b1 = l.counit.mul(&r.source);
    let b2 = r.counit.mul(&l.target);
    residual_matrix(&mut rep, "(ε_R t_L)(ε_L s_R) = id", &b2.mul(&b1), &idk, "e_");
    residual_matrix(&mut rep, "(ε_L s_R)(ε_R t_L) = id", &b1.mul(&b2), &idk, "e_");
    rep
}

/// Candidate morphism data.
#[derive(Clone, Debug)]
pub enum MorphismCandidate {
    /// Same base; a left and a right bialgebroid map.
    Algebraic { phi_left: Matrix, phi_right: Matrix },
    /// `f`: base → base' (k' × k), `phi`: H → K.
    Geometric { f: Matrix, phi: Matrix },
}

fn check_multiplicative(rep: &mut Report, name: &str, src: &Algebra, dst: &Algebra, phi: &Matrix) {
    rep.check(format!("{name} is multiplicative"), || {
        for a in 0..src.dim() {
            for b in 0..src.dim() {
                let lhs = phi.mul_vec(&src.basis_product(a, b));
                let rhs = dst.product(&phi.column(a), &phi.column(b));
                ensure_zero(&sub_vec(&lhs, &rhs), || format!("{name}(e{a}e{b}) − {name}(e{a}){name}(e{b})"))?;
            }
        }
        Ok(())
    });
    rep.check(format!("{name} is unital"), || {
        ensure_zero(&sub_vec(&phi.mul_vec(src.unit()), dst.unit()), || format!("{name}(1) − 1"))
    });
}

/// Rows for "φ is a bialgebroid map over f": structure maps intertwined and
/// P'(φ⊗φ)Δ = P'Δ'φ.
fn check_bialgebroid_map(rep: &mut Report, tag: &str, src: &Bialgebroid, dst: &Bialgebroid, f: &Matrix, phi: &Matrix) {
    residual_matrix(rep, &format!("{tag}: ε' φ = f ε"), &dst.counit.mul(phi), &f.mul(&src.counit), "e");
    residual_matrix(rep, &format!("{tag}: φ s = s' f"), &phi.mul(&src.source), &dst.source.mul(f), "e_");
    residual_matrix(rep, &format!("{tag}: φ t = t' f"), &phi.mul(&src.target), &dst.target.mul(f), "e_");
    let p2 = dst.projector();
    let lhs = p2.mul(&phi.kron(phi)).mul(&src.delta);
    let rhs = p2.mul(&dst.delta).mul(phi);
    residual_matrix(rep, &format!("{tag}: (φ⊗φ)Δ = Δ'φ"), &lhs, &rhs, "e");
}

pub fn validate_morphism(src: &HopfAlgebroid, dst: &HopfAlgebroid, m: &MorphismCandidate) -> Result<Report, StructureError> {
    let (n, n2) = (src.dim(), dst.dim());
    let (k, k2) = (src.base().dim(), dst.base().dim());
    match m {
        MorphismCandidate::Algebraic { phi_left, phi_right } => {
            if phi_left.shape() != (n2, n) || phi_right.shape() != (n2, n) {
                return Err(StructureError::Shape(format!("maps must be {n2}×{n}")));
            }
            if src.base() != dst.base() {
                return Err(StructureError::BaseMismatch);
            }
            let mut rep = Report::new("algebraic morphism");
            let idk = Matrix::identity(k);
            check_multiplicative(&mut rep, "φ_L", src.algebra(), dst.algebra(), phi_left);
            check_multiplicative(&mut rep, "φ_R", src.algebra(), dst.algebra(), phi_right);
            check_bialgebroid_map(&mut rep, "φ_L", &src.left, &dst.left, &idk, phi_left);
            check_bialgebroid_map(&mut rep, "φ_R", &src.right, &dst.right, &idk, phi_right);
            residual_matrix(&mut rep, "φ_R S = S' φ_L", &phi_right.mul(&src.antipode), &dst.antipode.mul(phi_left), "e");
            residual_matrix(&mut rep, "φ_L S = S' φ_R", &phi_left.mul(&src.antipode), &dst.antipode.mul(phi_right), "e");
            Ok(rep)
        }
        MorphismCandidate::Geometric { f, phi } => {
            if f.shape() != (k2, k) || phi.shape() != (n2, n) {
                return Err(StructureError::Shape(format!("f must be {k2}×{k} and φ must be {n2}×{n}")));
            }
            let mut rep = Report::new("geometric morphism");
            let base_src = Algebra::from_table(k, vec![Scalar::one(); k], |a, b| if a == b { vec![(a, Scalar::one())] } else { vec![] });
            let base_dst = Algebra::from_table(k2, vec![Scalar::one(); k2], |a, b| if a == b { vec![(a, Scalar::one())] } else { vec![] });
            check_multiplicative(&mut rep, "f", &base_src, &base_dst, f);
            check_bialgebroid_map(&mut rep, "(a) left", &src.left, &dst.left, f, phi);
            check_bialgebroid_map(&mut rep, "(a) right", &src.right, &dst.right, f, phi);
            check_multiplicative(&mut rep, "(b) φ", src.algebra(), dst.algebra(), phi);
            residual_matrix(&mut rep, "(d) φ S = S' φ", &phi.mul(&src.antipode), &dst.antipode.mul(phi), "e");
            if let Some(pm) = point_map(f) {
                let text: Vec<String> = pm
                    .iter()
                    .enumerate()
                    .map(|(x2, x)| format!("{} ↦ {}", dst.base().label(x2), src.base().label(*x)))
                    .collect();
                rep.info("induced point map X' → X", text.join(", "));
            }
            Ok(rep)
        }
    }
}

/// When f(e_x) = Σ_{x' ↦ x} e'_{x'}, the map x' ↦ x.
pub fn point_map(f: &Matrix) -> Option<Vec<usize>> {
    (0..f.rows())
        .map(|x2| {
            let row = f.row(x2);
            let ones: Vec<usize> = (0..row.len()).filter(|&x| row[x].is_one()).collect();
            let zeros = row.iter().filter(|v| v.is_zero()).count();
            (ones.len() == 1 && zeros + 1 == row.len()).then(|| ones[0])
        })
        .collect()
}
