//! Hopf algebroids over k^X and coupled Hopf categories over X, in both
//! directions, with the fiberwise structure in between.
//!
//! Fibers are E_(x,y) = s_L(e_x) H s_L(e_y). The hom hom(x,y) of the
//! associated category is E_(x,y), and g∘f is the product f·g.

use std::collections::BTreeMap;

use crate::bialgebroid::{check_hopf_algebroid, Bialgebroid, HopfAlgebroid};
use crate::bimodule::{fiber_decomposition, tensor_projector, Action, BaseAlgebra, BimoduleConvention, FiberDecomposition};
use crate::category::{
    check_coupled_category, check_enrichment, CoupledHopfCategory, Enrichment, FiniteLinearCategory, PairMap,
};
use crate::error::StructureError;
use crate::linalg::{is_zero_vec, kernel_basis, rank, sub_vec, try_inverse, unit_vec, zero_vec, Matrix, Scalar, Subspace};
use crate::report::{ensure, ensure_zero, Report, Witness};
use crate::ring::{convolution_inverse, Algebra, ConvolutionOutcome, ConvolutionProblem, Side};

/// Everything extracted fiber by fiber.
#[derive(Clone, Debug)]
pub struct FiberedStructure {
    pub decomposition: FiberDecomposition,
    /// (x,y,z) ↦ E_(x,y) ⊗ E_(y,z) → E_(x,z).
    pub mul: BTreeMap<(usize, usize, usize), Matrix>,
    /// 1(x,x) in the coordinates of E_(x,x).
    pub unit: Vec<Vec<Scalar>>,
    pub delta_left: PairMap<Matrix>,
    pub delta_right: PairMap<Matrix>,
    pub counit_left: PairMap<Vec<Scalar>>,
    pub counit_right: PairMap<Vec<Scalar>>,
    /// S_*: E_(x,y) → E_(y,x).
    pub antipode: PairMap<Matrix>,
    pub report: Report,
}

impl FiberedStructure {
    pub fn points(&self) -> usize {
        self.decomposition.points
    }

    /// The hat map: v ↦ its fiber components, stacked in pair order.
    pub fn hat(&self) -> Matrix {
        let n = self.decomposition.total_dim();
        let dim = self.decomposition.fibers.values().next().map_or(0, |f| f.inclusion.rows());
        let mut out = Matrix::zeros(n, dim);
        let mut row = 0;
        for f in self.decomposition.fibers.values() {
            for r in 0..f.dim() {
                for c in 0..dim {
                    out.set(row + r, c, f.projection.get(r, c).clone());
                }
            }
            row += f.dim();
        }
        out
    }
}

/// Category plus the fiber data it came from.
#[derive(Clone, Debug)]
pub struct AssociatedCategory {
    pub category: CoupledHopfCategory,
    pub fibers: FiberedStructure,
}

fn embed2(inc: &Matrix, v: &[Scalar], d: usize) -> Vec<Scalar> {
    // (ι ⊗ ι) v for v ∈ E ⊗ E of dimension d²
    let n = inc.rows();
    let mut out = zero_vec(n * n);
    for (p, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (a, b) = (inc.column(p / d), inc.column(p % d));
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    out[i * n + j] += &(c * &(ai * bj));
                }
            }
        }
    }
    out
}

fn project2(proj: &Matrix, v: &[Scalar], n: usize) -> Vec<Scalar> {
    let d = proj.rows();
    let mut out = zero_vec(d * d);
    for (p, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (a, b) = (proj.column(p / n), proj.column(p % n));
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    out[i * d + j] += &(c * &(ai * bj));
                }
            }
        }
    }
    out
}

fn require(what: &str, rep: &Report) -> Result<(), StructureError> {
    match rep.first_failure() {
        None => Ok(()),
        Some(row) => Err(StructureError::AxiomsFailed { what: what.into(), first_failure: row.axiom.clone() }),
    }
}

/// Extracts the fiberwise structure and checks the fiber propositions.
pub fn fibered_structure(h: &HopfAlgebroid) -> FiberedStructure {
    let n = h.dim();
    let k = h.base().dim();
    let alg = h.algebra();
    let dec = fiber_decomposition(&h.left.carrier(), BimoduleConvention::RING);
    let fib = |x: usize, y: usize| dec.fiber(x, y);
    let mut rep = Report::new("fiber structure");

    rep.check("Σ fiber dims = dim H", || {
        ensure(dec.total_dim() == n, || format!("fibers add up to {} of {n}", dec.total_dim()))
    });
    let support = dec.support();
    rep.check("diagonal ⊆ Z", || {
        for x in 0..k {
            ensure(support.contains(x, x), || format!("E({}, {}) = 0", h.base().label(x), h.base().label(x)))?;
        }
        Ok(())
    });

    let mut unit = Vec::new();
    rep.check("1(x,y) = 0 off the diagonal", || {
        for x in 0..k {
            for y in 0..k {
                let f = fib(x, y);
                let c = f.projection.mul_vec(alg.unit());
                if x != y {
                    ensure_zero(&c, || format!("1({x},{y})"))?;
                }
            }
        }
        Ok(())
    });
    for x in 0..k {
        unit.push(fib(x, x).projection.mul_vec(alg.unit()));
    }

    let mut mul = BTreeMap::new();
    rep.check("μ maps E(x,y) ⊗ E(y,z) into E(x,z)", || {
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    let (a, b, c) = (fib(x, y), fib(y, z), fib(x, z));
                    if a.dim() == 0 || b.dim() == 0 {
                        continue;
                    }
                    let mut cols = Vec::new();
                    for i in 0..a.dim() {
                        for j in 0..b.dim() {
                            let p = alg.product(&a.inclusion.column(i), &b.inclusion.column(j));
                            let back = c.inclusion.mul_vec(&c.projection.mul_vec(&p));
                            ensure_zero(&sub_vec(&p, &back), || format!("({x},{y},{z}), basis ({i},{j})"))?;
                            cols.push(c.projection.mul_vec(&p));
                        }
                    }
                    if c.dim() > 0 {
                        mul.insert((x, y, z), Matrix::from_columns(c.dim(), &cols));
                    }
                }
            }
        }
        Ok(())
    });
    rep.check("E(x,y)·E(w,z) = 0 for y ≠ w", || {
        for (&(x, y), a) in &dec.fibers {
            for (&(w, z), b) in &dec.fibers {
                if y == w {
                    continue;
                }
                for i in 0..a.dim() {
                    for j in 0..b.dim() {
                        let p = alg.product(&a.inclusion.column(i), &b.inclusion.column(j));
                        ensure_zero(&p, || format!("E({x},{y}) · E({w},{z})"))?;
                    }
                }
            }
        }
        Ok(())
    });

    let mut counit_left = PairMap::new();
    let mut counit_right = PairMap::new();
    for (&(x, y), f) in dec.fibers.iter().filter(|(_, f)| f.dim() > 0) {
        let el = h.left.counit.mul(&f.inclusion);
        let er = h.right.counit.mul(&f.inclusion);
        counit_left.insert((x, y), el.row(x).to_vec());
        counit_right.insert((x, y), er.row(y).to_vec());
    }
    rep.check("(ε_L)_* ≠ 0 on Z", || {
        for (p, v) in &counit_left {
            ensure(!is_zero_vec(v), || format!("(ε_L)_* vanishes on E{p:?}"))?;
        }
        Ok(())
    });
    rep.check("(ε_R)_* ≠ 0 on Z", || {
        for (p, v) in &counit_right {
            ensure(!is_zero_vec(v), || format!("(ε_R)_* vanishes on E{p:?}"))?;
        }
        Ok(())
    });

    let mut delta_left = PairMap::new();
    let mut delta_right = PairMap::new();
    for (side, full, out) in [("Δ_L", h.delta_left(), &mut delta_left), ("Δ_R", h.delta_right(), &mut delta_right)] {
        rep.check(format!("{side} maps E(x,y) into E(x,y) ⊗ E(x,y)"), || {
            for (&(x, y), f) in dec.fibers.iter().filter(|(_, f)| f.dim() > 0) {
                let d = f.dim();
                let mut cols = Vec::new();
                for i in 0..d {
                    let v = full.mul_vec(&f.inclusion.column(i));
                    let c = project2(&f.projection, &v, n);
                    ensure_zero(&sub_vec(&v, &embed2(&f.inclusion, &c, d)), || format!("basis {i} of E({x},{y})"))?;
                    cols.push(c);
                }
                out.insert((x, y), Matrix::from_columns(d * d, &cols));
            }
            Ok(())
        });
    }

    let mut antipode = PairMap::new();
    let s_inv = h.antipode_inverse();
    rep.check("S_* maps E(x,y) onto E(y,x)", || {
        for (&(x, y), f) in &dec.fibers {
            let g = fib(y, x);
            let img = h.antipode.mul(&f.inclusion);
            let back = g.inclusion.mul(&g.projection).mul(&img);
            ensure(back == img, || format!("S leaks out of E({y},{x}) on E({x},{y})"))?;
            let s = g.projection.mul(&img);
            ensure(s.rows() == s.cols() && rank(&s) == s.cols(), || format!("S_* on E({x},{y}) is not bijective"))?;
            antipode.insert((x, y), s);
        }
        Ok(())
    });
    rep.check("(S_*)⁻¹ is induced by S⁻¹", || {
        let s_inv = s_inv.as_ref().ok_or_else(|| Witness::note("S is not invertible"))?;
        for (&(x, y), s) in &antipode {
            let (f, g) = (fib(x, y), fib(y, x));
            let inv = f.projection.mul(s_inv).mul(&g.inclusion);
            ensure(inv.mul(s) == Matrix::identity(f.dim()), || format!("E({x},{y})"))?;
        }
        Ok(())
    });

    FiberedStructure {
        decomposition: dec,
        mul,
        unit,
        delta_left,
        delta_right,
        counit_left,
        counit_right,
        antipode,
        report: rep,
    }
}

/// The coupled Hopf category of a Hopf algebroid.
pub fn algebroid_to_category(h: &HopfAlgebroid) -> Result<AssociatedCategory, StructureError> {
    require("Hopf algebroid", &check_hopf_algebroid(h))?;
    let fibers = fibered_structure(h);
    require("fiber structure", &fibers.report)?;
    let k = fibers.points();
    let dims = (0..k).map(|x| (0..k).map(|y| fibers.decomposition.fiber(x, y).dim()).collect()).collect();
    let category = FiniteLinearCategory::new(h.base().space().clone(), dims, fibers.mul.clone(), fibers.unit.clone())?;
    let category = CoupledHopfCategory {
        category,
        left: Enrichment { delta: fibers.delta_left.clone(), counit: fibers.counit_left.clone() },
        right: Enrichment { delta: fibers.delta_right.clone(), counit: fibers.counit_right.clone() },
        coupling: fibers.antipode.iter().filter(|(&(x, y), _)| fibers.decomposition.fiber(x, y).dim() > 0).map(|(k, v)| (*k, v.clone())).collect(),
    };
    require("coupled Hopf category", &check_coupled_category(&category))?;
    Ok(AssociatedCategory { category, fibers })
}

/// Offsets of each hom inside ⊕ hom(x,y), pairs in lexicographic order.
pub fn hom_offsets(cat: &FiniteLinearCategory) -> BTreeMap<(usize, usize), usize> {
    let mut out = BTreeMap::new();
    let mut at = 0;
    for (x, y) in cat.pairs() {
        out.insert((x, y), at);
        at += cat.dim(x, y);
    }
    out
}

/// Sections ⊕ hom(x,y) with the matrix-style product, s = t = Σ id_x.
pub fn category_to_algebroid(c: &CoupledHopfCategory) -> Result<HopfAlgebroid, StructureError> {
    require("coupled Hopf category", &check_coupled_category(c))?;
    let h = assemble_sections(c)?;
    require("assembled Hopf algebroid", &check_hopf_algebroid(&h))?;
    Ok(h)
}

fn assemble_sections(c: &CoupledHopfCategory) -> Result<HopfAlgebroid, StructureError> {
    let cat = &c.category;
    let k = cat.len();
    let n = cat.total_dim();
    let off = hom_offsets(cat);
    // basis index ↦ (x, y, local index)
    let mut where_: Vec<(usize, usize, usize)> = Vec::with_capacity(n);
    for (x, y) in cat.pairs() {
        for i in 0..cat.dim(x, y) {
            where_.push((x, y, i));
        }
    }
    let algebra = Algebra::from_table(n, {
        let mut u = zero_vec(n);
        for x in 0..k {
            for (i, v) in cat.identities[x].iter().enumerate() {
                u[off[&(x, x)] + i] = v.clone();
            }
        }
        u
    }, |a, b| {
        let (x, y, i) = where_[a];
        let (w, z, j) = where_[b];
        if y != w {
            return vec![];
        }
        let p = cat.product(x, y, z, &unit_vec(cat.dim(x, y), i), &unit_vec(cat.dim(y, z), j));
        p.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(t, v)| (off[&(x, z)] + t, v)).collect()
    });
    let ids = Matrix::from_columns(n, &(0..k).map(|x| {
        let mut v = zero_vec(n);
        for (i, s) in cat.identities[x].iter().enumerate() {
            v[off[&(x, x)] + i] = s.clone();
        }
        v
    }).collect::<Vec<_>>());
    let delta = |e: &Enrichment| {
        let mut m = Matrix::zeros(n * n, n);
        for (&(x, y), d) in &e.delta {
            let dim = cat.dim(x, y);
            let o = off[&(x, y)];
            for col in 0..dim {
                for (p, v) in d.column(col).into_iter().enumerate() {
                    if !v.is_zero() {
                        m.set((o + p / dim) * n + o + p % dim, o + col, v);
                    }
                }
            }
        }
        m
    };
    let counit = |e: &Enrichment, left: bool| {
        let mut m = Matrix::zeros(k, n);
        for (&(x, y), v) in &e.counit {
            let row = if left { x } else { y };
            for (i, s) in v.iter().enumerate() {
                m.set(row, off[&(x, y)] + i, s.clone());
            }
        }
        m
    };
    let mut s = Matrix::zeros(n, n);
    for (&(x, y), m) in &c.coupling {
        for col in 0..m.cols() {
            for row in 0..m.rows() {
                s.set(off[&(y, x)] + row, off[&(x, y)] + col, m.get(row, col).clone());
            }
        }
    }
    let base = BaseAlgebra::new(cat.objects.clone());
    let mut left = Bialgebroid::new(Side::Left, base.clone(), algebra.clone(), ids.clone(), ids.clone(), delta(&c.left), counit(&c.left, true))?;
    left.delta = left.projector().mul(&left.delta);
    let mut right = Bialgebroid::new(Side::Right, base, algebra, ids.clone(), ids, delta(&c.right), counit(&c.right, false))?;
    right.delta = right.projector().mul(&right.delta);
    HopfAlgebroid::new(left, right, s)
}

fn intertwines(rep: &mut Report, axiom: &str, lhs: &Matrix, rhs: &Matrix) {
    rep.check(axiom, || {
        if lhs.shape() != rhs.shape() {
            return Err(Witness::note(format!("shapes {:?} and {:?}", lhs.shape(), rhs.shape())));
        }
        for c in 0..lhs.cols() {
            ensure_zero(&sub_vec(&lhs.column(c), &rhs.column(c)), || format!("e{c}"))?;
        }
        Ok(())
    });
}

/// Category and back, compared through the hat map.
pub fn round_trip_check(h: &HopfAlgebroid) -> Report {
    let mut rep = Report::new("round trip");
    let assoc = match algebroid_to_category(h) {
        Ok(a) => a,
        Err(e) => {
            rep.fail("algebroid → category", Witness::note(e.to_string()));
            return rep;
        }
    };
    rep.pass("algebroid → category", format!("{} objects", assoc.category.category.len()));
    let back = match category_to_algebroid(&assoc.category) {
        Ok(b) => b,
        Err(e) => {
            rep.fail("category → algebroid", Witness::note(e.to_string()));
            return rep;
        }
    };
    rep.pass("category → algebroid", format!("dimension {}", back.dim()));
    let t = assoc.fibers.hat();
    rep.check("hat map is invertible", || ensure(try_inverse(&t).is_some(), || "hat map is singular".into()));
    let tt = t.kron(&t);
    let (a, b) = (h.algebra(), back.algebra());
    intertwines(&mut rep, "T μ = μ' (T⊗T)", &t.mul(a.mul_tensor()), &b.mul_tensor().mul(&tt));
    intertwines(&mut rep, "T 1 = 1'", &t.mul(&Matrix::column_vector(a.unit().to_vec())), &Matrix::column_vector(b.unit().to_vec()));
    for (name, x, y) in [("left", &h.left, &back.left), ("right", &h.right, &back.right)] {
        intertwines(&mut rep, &format!("T s_{name} = s'_{name}"), &t.mul(&x.source), &y.source);
        intertwines(&mut rep, &format!("T t_{name} = t'_{name}"), &t.mul(&x.target), &y.target);
        intertwines(&mut rep, &format!("ε'_{name} T = ε_{name}"), &y.counit.mul(&t), &x.counit);
        let lhs = y.projector().mul(&tt).mul(&x.projector()).mul(&x.delta);
        let rhs = y.projector().mul(&y.delta).mul(&t);
        intertwines(&mut rep, &format!("(T⊗T) Δ_{name} = Δ'_{name} T"), &lhs, &rhs);
    }
    intertwines(&mut rep, "T S = S' T", &t.mul(&h.antipode), &back.antipode.mul(&t));
    rep
}

/// Central or not, and what follows.
#[derive(Clone, Debug)]
pub struct CentralCase {
    pub central: bool,
    /// A′: sections supported on the diagonal, when not central.
    pub centralizer: Option<Subspace>,
    pub report: Report,
}

/// Fiber E_(x,x) as a one-object category with one enrichment.
fn fiber_monoid(f: &FiberedStructure, x: usize, e: (&PairMap<Matrix>, &PairMap<Vec<Scalar>>)) -> (FiniteLinearCategory, Enrichment) {
    let d = f.decomposition.fiber(x, x).dim();
    let cat = FiniteLinearCategory {
        objects: crate::bimodule::FiniteSpace::singleton(),
        dims: vec![vec![d]],
        compose: [((0, 0, 0), f.mul[&(x, x, x)].clone())].into_iter().collect(),
        identities: vec![f.unit[x].clone()],
    };
    let enr = Enrichment {
        delta: [((0, 0), e.0[&(x, x)].clone())].into_iter().collect(),
        counit: [((0, 0), e.1[&(x, x)].clone())].into_iter().collect(),
    };
    (cat, enr)
}

fn gal_map(h: &HopfAlgebroid, p: &Matrix, delta: &Matrix) -> Matrix {
    // a ⊗ b ↦ a b₍₁₎ ⊗ b₍₂₎ on H ⊗ H, then projected
    let n = h.dim();
    let alg = h.algebra();
    let mut cols = Vec::with_capacity(n * n);
    for a in 0..n {
        let la = alg.left_mul(&unit_vec(n, a)).kron(&Matrix::identity(n));
        for b in 0..n {
            cols.push(p.mul_vec(&la.mul_vec(&delta.column(b))));
        }
    }
    Matrix::from_columns(n * n, &cols)
}

pub fn central_case_report(h: &HopfAlgebroid) -> CentralCase {
    let mut rep = Report::new("central case");
    let n = h.dim();
    let k = h.base().dim();
    let alg = h.algebra();
    let images: Vec<Vec<Scalar>> = (0..k)
        .flat_map(|x| [h.left.source_of(x), h.left.target_of(x), h.right.source_of(x), h.right.target_of(x)])
        .collect();
    let central = images.iter().all(|v| (0..n).all(|b| alg.product(v, &unit_vec(n, b)) == alg.product(&unit_vec(n, b), v)));
    rep.info("base is central", if central { "yes" } else { "no" });
    let fibers = fibered_structure(h);
    rep.absorb("fibers", fibers.report.clone());
    if !fibers.report.passed() {
        return CentralCase { central, centralizer: None, report: rep };
    }
    if !central {
        // A′ and the centralizer of s_L(A)
        let diag: Vec<Vec<Scalar>> = (0..k)
            .flat_map(|x| {
                let f = fibers.decomposition.fiber(x, x);
                (0..f.dim()).map(move |i| f.inclusion.column(i))
            })
            .collect();
        let a_prime = Subspace::span(n, &diag);
        let blocks: Vec<Matrix> = (0..k)
            .map(|x| {
                let s = h.left.source_of(x);
                alg.left_mul(&s).sub(&alg.right_mul(&s))
            })
            .collect();
        let refs: Vec<&Matrix> = blocks.iter().collect();
        let centralizer = kernel_basis(&Matrix::vstack(&refs));
        rep.pass("A′ dimension", a_prime.dim().to_string());
        rep.check("A′ is closed under multiplication", || {
            for a in a_prime.basis_vectors() {
                for b in a_prime.basis_vectors() {
                    ensure(a_prime.contains(&alg.product(&a, &b)), || "product leaves A′".into())?;
                }
            }
            Ok(())
        });
        rep.check("A′ contains the unit", || ensure(a_prime.contains(alg.unit()), || "1 ∉ A′".into()));
        rep.check("A′ is the centralizer of A", || ensure(centralizer == a_prime, || format!("centralizer has dimension {}", centralizer.dim())));
        return CentralCase { central, centralizer: Some(a_prime), report: rep };
    }
    rep.check("support is the diagonal", || ensure(fibers.decomposition.support().is_diagonal(), || "off-diagonal fiber".into()));
    for x in 0..k {
        for (name, e) in [("left", (&fibers.delta_left, &fibers.counit_left)), ("right", (&fibers.delta_right, &fibers.counit_right))] {
            let (cat, enr) = fiber_monoid(&fibers, x, e);
            let mut sub = Report::new("bialgebra");
            check_enrichment(&mut sub, name, &cat, &enr);
            rep.absorb(&format!("E({})", h.base().label(x)), sub);
        }
    }
    let carrier = h.left.carrier();
    let p = tensor_projector(&carrier, Action::RightSource, &carrier, Action::LeftSource);
    let gl = gal_map(h, &p, &h.delta_left());
    let gr = gal_map(h, &p, &h.delta_right());
    let target = rank(&p);
    let mut both = true;
    for (name, g) in [("gal_L", &gl), ("gal_R", &gr)] {
        let r = rank(&g.mul(&p));
        let ok = r == target;
        both &= ok;
        if ok {
            rep.pass(format!("{name} bijective on H ⊗_A H"), format!("rank {r}"));
        } else {
            rep.info(format!("{name} bijective on H ⊗_A H"), format!("rank {r} of {target}"));
        }
    }
    if !both {
        rep.info("fiber Hopf algebras", "not computed: a Galois map is not bijective");
        return CentralCase { central, centralizer: None, report: rep };
    }
    for x in 0..k {
        let lbl = h.base().label(x).to_string();
        let (cat, _) = fiber_monoid(&fibers, x, (&fibers.delta_left, &fibers.counit_left));
        let d = cat.dims[0][0];
        let alg_x = Algebra::new(cat.compose[&(0, 0, 0)].clone(), cat.identities[0].clone());
        let Ok(alg_x) = alg_x else {
            rep.fail(format!("E({lbl}) algebra"), Witness::note("fiber product has the wrong shape"));
            continue;
        };
        let eta = Matrix::column_vector(alg_x.unit().to_vec());
        let (dl, dr) = (fibers.delta_left[&(x, x)].clone(), fibers.delta_right[&(x, x)].clone());
        let el = eta.mul(&Matrix::from_rows(vec![fibers.counit_left[&(x, x)].clone()]));
        let er = eta.mul(&Matrix::from_rows(vec![fibers.counit_right[&(x, x)].clone()]));
        let id = Matrix::identity(d);
        for (name, delta, target) in [("left", &dl, &el), ("right", &dr, &er)] {
            let problem = ConvolutionProblem {
                algebra: alg_x.clone(),
                left_delta: delta.clone(),
                left_target: target.clone(),
                right_delta: delta.clone(),
                right_target: target.clone(),
                intertwiners: vec![],
            };
            match convolution_inverse(&problem, &id) {
                ConvolutionOutcome::Unique(_) => rep.pass(format!("E({lbl}) {name} is a Hopf algebra"), "id has a convolution inverse"),
                other => rep.fail(format!("E({lbl}) {name} is a Hopf algebra"), Witness::note(format!("{other:?}"))),
            }
        }
        let coupled = ConvolutionProblem {
            algebra: alg_x.clone(),
            left_delta: dl,
            left_target: er,
            right_delta: dr,
            right_target: el,
            intertwiners: vec![],
        };
        let s = &fibers.antipode[&(x, x)];
        match convolution_inverse(&coupled, &id) {
            ConvolutionOutcome::Unique(g) if &g == s => rep.pass(format!("E({lbl}) coupled by S_*"), "unique coupling map equals S_*"),
            other => rep.fail(format!("E({lbl}) coupled by S_*"), Witness::note(format!("{other:?}"))),
        }
    }
    CentralCase { central, centralizer: None, report: rep }
}
