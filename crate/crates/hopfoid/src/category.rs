//! Finite linear categories with coalgebra-enriched homs: Hopf categories,
//! coupled Hopf categories, comodule categories, coinvariants and the
//! categorical Galois condition.
//!
//! Composition is stored in product order: `compose[(x, y, z)]` maps
//! hom(x,y) ⊗ hom(y,z) → hom(x,z), f ⊗ g ↦ g∘f. This is the order in which
//! the algebroid multiplies fiber elements.

use std::collections::BTreeMap;

use crate::bimodule::FiniteSpace;
use crate::constructions::HopfAlgebraData;
use crate::error::StructureError;
use crate::linalg::{apply_slot, kernel_basis, kron_vec, rank, sub_vec, unit_vec, zero_vec, Matrix, Scalar, Subspace};
use crate::report::{ensure, ensure_zero, Report, Witness};

pub type PairMap<T> = BTreeMap<(usize, usize), T>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLinearCategory {
    pub objects: FiniteSpace,
    /// dims[x][y] = dim hom(x,y).
    pub dims: Vec<Vec<usize>>,
    /// Only triples with all three homs nonzero are stored.
    pub compose: BTreeMap<(usize, usize, usize), Matrix>,
    pub identities: Vec<Vec<Scalar>>,
}

fn shape(msg: String) -> StructureError {
    StructureError::Shape(msg)
}

impl FiniteLinearCategory {
    pub fn new(
        objects: FiniteSpace,
        dims: Vec<Vec<usize>>,
        compose: BTreeMap<(usize, usize, usize), Matrix>,
        identities: Vec<Vec<Scalar>>,
    ) -> Result<Self, StructureError> {
        let k = objects.len();
        if dims.len() != k || dims.iter().any(|r| r.len() != k) {
            return Err(shape(format!("hom dimension table must be {k}×{k}")));
        }
        if identities.len() != k {
            return Err(shape(format!("need {k} identities")));
        }
        for (x, id) in identities.iter().enumerate() {
            if id.len() != dims[x][x] {
                return Err(shape(format!("id_{} must lie in hom({0},{0})", objects.label(x))));
            }
        }
        for (&(x, y, z), m) in &compose {
            if x >= k || y >= k || z >= k {
                return Err(shape("composition index out of range".into()));
            }
            if m.shape() != (dims[x][z], dims[x][y] * dims[y][z]) {
                return Err(shape(format!("composition at ({x},{y},{z}) must be {}×{}", dims[x][z], dims[x][y] * dims[y][z])));
            }
        }
        Ok(FiniteLinearCategory { objects, dims, compose, identities })
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn dim(&self, x: usize, y: usize) -> usize {
        self.dims[x][y]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.len();
        (0..k).flat_map(move |x| (0..k).map(move |y| (x, y)))
    }

    /// Nonzero homs.
    pub fn support(&self) -> Vec<(usize, usize)> {
        self.pairs().filter(|&(x, y)| self.dims[x][y] > 0).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().flatten().sum()
    }

    /// The composition map for (x,y,z), zero when not stored.
    pub fn compose_map(&self, x: usize, y: usize, z: usize) -> Matrix {
        self.compose
            .get(&(x, y, z))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dims[x][z], self.dims[x][y] * self.dims[y][z]))
    }

    /// f·g = g∘f for f ∈ hom(x,y), g ∈ hom(y,z).
    pub fn product(&self, x: usize, y: usize, z: usize, f: &[Scalar], g: &[Scalar]) -> Vec<Scalar> {
        match self.compose.get(&(x, y, z)) {
            Some(m) => m.mul_vec(&kron_vec(f, g)),
            None => zero_vec(self.dims[x][z]),
        }
    }

    /// I_X: one-dimensional endomorphisms, nothing else.
    pub fn trivial(objects: FiniteSpace) -> Self {
        let k = objects.len();
        let dims = (0..k).map(|x| (0..k).map(|y| usize::from(x == y)).collect()).collect();
        let compose = (0..k).map(|x| ((x, x, x), Matrix::identity(1))).collect();
        FiniteLinearCategory { objects, dims, compose, identities: vec![vec![Scalar::one()]; k] }
    }

    /// 𝟙^X: every hom is the ground field.
    pub fn unit_category(objects: FiniteSpace) -> Self {
        let k = objects.len();
        let mut compose = BTreeMap::new();
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    compose.insert((x, y, z), Matrix::identity(1));
                }
            }
        }
        FiniteLinearCategory { objects, dims: vec![vec![1; k]; k], compose, identities: vec![vec![Scalar::one()]; k] }
    }

    pub fn check(&self) -> Report {
        let mut rep = Report::new("linear category");
        let k = self.len();
        rep.check("identities are neutral", || {
            for (x, y) in self.pairs() {
                for i in 0..self.dims[x][y] {
                    let f = unit_vec(self.dims[x][y], i);
                    let l = self.product(x, x, y, &self.identities[x], &f);
                    ensure_zero(&sub_vec(&l, &f), || format!("id_{} then basis {i} of hom({x},{y})", self.objects.label(x)))?;
                    let r = self.product(x, y, y, &f, &self.identities[y]);
                    ensure_zero(&sub_vec(&r, &f), || format!("basis {i} of hom({x},{y}) then id_{}", self.objects.label(y)))?;
                }
            }
            Ok(())
        });
        rep.check("composition is associative", || {
            for w in 0..k {
                for x in 0..k {
                    for y in 0..k {
                        for z in 0..k {
                            let (a, b, c) = (self.dims[w][x], self.dims[x][y], self.dims[y][z]);
                            for i in 0..a {
                                for j in 0..b {
                                    for l in 0..c {
                                        let (f, g, h) = (unit_vec(a, i), unit_vec(b, j), unit_vec(c, l));
                                        let lhs = self.product(w, y, z, &self.product(w, x, y, &f, &g), &h);
                                        let rhs = self.product(w, x, z, &f, &self.product(x, y, z, &g, &h));
                                        ensure_zero(&sub_vec(&lhs, &rhs), || format!("objects ({w},{x},{y},{z}), basis ({i},{j},{l})"))?;
                                    }
                                }
                            }
                        }
                    }
                }
            }
            Ok(())
        });
        rep
    }
}

/// A coalgebra structure on every hom.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Enrichment {
    pub delta: PairMap<Matrix>,
    pub counit: PairMap<Vec<Scalar>>,
}

impl Enrichment {
    fn delta_of(&self, cat: &FiniteLinearCategory, x: usize, y: usize) -> Matrix {
        let d = cat.dim(x, y);
        self.delta.get(&(x, y)).cloned().unwrap_or_else(|| Matrix::zeros(d * d, d))
    }

    fn counit_of(&self, cat: &FiniteLinearCategory, x: usize, y: usize) -> Vec<Scalar> {
        self.counit.get(&(x, y)).cloned().unwrap_or_else(|| zero_vec(cat.dim(x, y)))
    }

    pub fn validate(&self, cat: &FiniteLinearCategory) -> Result<(), StructureError> {
        for (x, y) in cat.support() {
            let d = cat.dim(x, y);
            match (self.delta.get(&(x, y)), self.counit.get(&(x, y))) {
                (Some(m), Some(e)) if m.shape() == (d * d, d) && e.len() == d => {}
                _ => return Err(shape(format!("coproduct and counit on hom({x},{y}) must have dimension {d}"))),
            }
        }
        if self.delta.keys().chain(self.counit.keys()).any(|&(x, y)| x >= cat.len() || y >= cat.len() || cat.dim(x, y) == 0) {
            return Err(shape("coalgebra data on a zero hom".into()));
        }
        Ok(())
    }

    /// Grouplike enrichment on a basis: Δ(e_i) = e_i ⊗ e_i, ε(e_i) = 1.
    pub fn grouplike(cat: &FiniteLinearCategory) -> Self {
        let mut out = Enrichment::default();
        for (x, y) in cat.support() {
            let d = cat.dim(x, y);
            out.delta.insert((x, y), Matrix::from_fn(d * d, d, |r, c| if r == c * d + c { Scalar::one() } else { Scalar::zero() }));
            out.counit.insert((x, y), vec![Scalar::one(); d]);
        }
        out
    }
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

/// Coalgebra axioms per hom and functoriality of Δ and ε.
pub fn check_enrichment(rep: &mut Report, tag: &str, cat: &FiniteLinearCategory, e: &Enrichment) {
    if let Err(err) = e.validate(cat) {
        rep.fail(format!("{tag}: shapes"), Witness::note(err.to_string()));
        return;
    }
    let k = cat.len();
    rep.check(format!("{tag}: coassociativity"), || {
        for (x, y) in cat.support() {
            let d = cat.dim(x, y);
            let m = e.delta_of(cat, x, y);
            for i in 0..d {
                let v = m.column(i);
                let diff = sub_vec(&apply_slot(&v, &[d, d], 0, &m), &apply_slot(&v, &[d, d], 1, &m));
                ensure_zero(&diff, || format!("basis {i} of hom({x},{y})"))?;
            }
        }
        Ok(())
    });
    rep.check(format!("{tag}: counit"), || {
        for (x, y) in cat.support() {
            let d = cat.dim(x, y);
            let m = e.delta_of(cat, x, y);
            let eps = Matrix::from_rows(vec![e.counit_of(cat, x, y)]);
            for i in 0..d {
                let v = m.column(i);
                ensure_zero(&sub_vec(&apply_slot(&v, &[d, d], 0, &eps), &unit_vec(d, i)), || format!("(ε⊗id)Δ on basis {i} of hom({x},{y})"))?;
                ensure_zero(&sub_vec(&apply_slot(&v, &[d, d], 1, &eps), &unit_vec(d, i)), || format!("(id⊗ε)Δ on basis {i} of hom({x},{y})"))?;
            }
        }
        Ok(())
    });
    rep.check(format!("{tag}: Δ(g∘f) = (g₁∘f₁)⊗(g₂∘f₂)"), || {
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    let (a, b, c) = (cat.dim(x, y), cat.dim(y, z), cat.dim(x, z));
                    if a == 0 || b == 0 {
                        continue;
                    }
                    let comp = cat.compose_map(x, y, z);
                    let (da, db, dc) = (e.delta_of(cat, x, y), e.delta_of(cat, y, z), e.delta_of(cat, x, z));
                    for i in 0..a {
                        for j in 0..b {
                            let lhs = dc.mul_vec(&cat.product(x, y, z, &unit_vec(a, i), &unit_vec(b, j)));
                            // (f₁⊗f₂)⊗(g₁⊗g₂) reordered to (f₁⊗g₁)⊗(f₂⊗g₂)
                            let (fi, gj) = (da.column(i), db.column(j));
                            let mut rhs = zero_vec(c * c);
                            for (p, fp) in fi.iter().enumerate() {
                                if fp.is_zero() {
                                    continue;
                                }
                                for (q, gq) in gj.iter().enumerate() {
                                    if gq.is_zero() {
                                        continue;
                                    }
                                    let (f1, f2, g1, g2) = (p / a, p % a, q / b, q % b);
                                    let left = comp.column(f1 * b + g1);
                                    let right = comp.column(f2 * b + g2);
                                    let coef = fp * gq;
                                    for (u, lu) in left.iter().enumerate() {
                                        if lu.is_zero() {
                                            continue;
                                        }
                                        for (v, rv) in right.iter().enumerate() {
                                            if !rv.is_zero() {
                                                rhs[u * c + v] += &(&coef * &(lu * rv));
                                            }
                                        }
                                    }
                                }
                            }
                            ensure_zero(&sub_vec(&lhs, &rhs), || format!("f = basis {i} of hom({x},{y}), g = basis {j} of hom({y},{z})"))?;
                        }
                    }
                }
            }
        }
        Ok(())
    });
    rep.check(format!("{tag}: ε(g∘f) = ε(g)ε(f)"), || {
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    let (a, b) = (cat.dim(x, y), cat.dim(y, z));
                    let (ea, eb, ec) = (e.counit_of(cat, x, y), e.counit_of(cat, y, z), e.counit_of(cat, x, z));
                    for i in 0..a {
                        for j in 0..b {
                            let lhs = dot(&ec, &cat.product(x, y, z, &unit_vec(a, i), &unit_vec(b, j)));
                            let d = &lhs - &(&ea[i] * &eb[j]);
                            ensure_zero(&[d], || format!("f = basis {i} of hom({x},{y}), g = basis {j} of hom({y},{z})"))?;
                        }
                    }
                }
            }
        }
        Ok(())
    });
    rep.check(format!("{tag}: Δ(id_x) = id_x ⊗ id_x and ε(id_x) = 1"), || {
        for x in 0..k {
            let id = &cat.identities[x];
            let d = e.delta_of(cat, x, x).mul_vec(id);
            ensure_zero(&sub_vec(&d, &kron_vec(id, id)), || format!("Δ(id_{})", cat.objects.label(x)))?;
            let eps = dot(&e.counit_of(cat, x, x), id);
            ensure(eps.is_one(), || format!("ε(id_{}) = {eps}", cat.objects.label(x)))?;
        }
        Ok(())
    });
}

/// Arrow-reversing maps S_{x,y}: hom(x,y) → hom(y,x), built from entries
/// that name their source and target homs.
pub fn reversing_maps(
    cat: &FiniteLinearCategory,
    entries: Vec<((usize, usize), (usize, usize), Matrix)>,
) -> Result<PairMap<Matrix>, StructureError> {
    let mut out = PairMap::new();
    for ((x, y), to, m) in entries {
        if to != (y, x) {
            return Err(shape(format!("map on hom({x},{y}) must target hom({y},{x}), not hom({},{})", to.0, to.1)));
        }
        if x >= cat.len() || y >= cat.len() || m.shape() != (cat.dim(y, x), cat.dim(x, y)) {
            return Err(shape(format!("map on hom({x},{y}) has the wrong shape")));
        }
        out.insert((x, y), m);
    }
    Ok(out)
}

fn reversing_of(cat: &FiniteLinearCategory, s: &PairMap<Matrix>, x: usize, y: usize) -> Matrix {
    s.get(&(x, y)).cloned().unwrap_or_else(|| Matrix::zeros(cat.dim(y, x), cat.dim(x, y)))
}

/// For h ∈ hom(x,y): h₂∘S(h₁) = ε'(h)·id_y using `first`, and
/// S(h₂)∘h₁ = ε''(h)·id_x using `second`.
fn check_reversal(
    rep: &mut Report,
    cat: &FiniteLinearCategory,
    s: &PairMap<Matrix>,
    (first, first_name, eps_first): (&Enrichment, &str, &Enrichment),
    (second, second_name, eps_second): (&Enrichment, &str, &Enrichment),
) {
    rep.check(format!("h₂∘S(h₁) = {first_name}(h)·id_y"), || {
        for (x, y) in cat.support() {
            let d = cat.dim(x, y);
            let sm = reversing_of(cat, s, x, y);
            let delta = first.delta_of(cat, x, y);
            let eps = eps_first.counit_of(cat, x, y);
            for i in 0..d {
                let v = apply_slot(&delta.column(i), &[d, d], 0, &sm);
                let mut out = zero_vec(cat.dim(y, y));
                let dyx = cat.dim(y, x);
                for (p, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        let prod = cat.product(y, x, y, &unit_vec(dyx, p / d), &unit_vec(d, p % d));
                        for (o, q) in out.iter_mut().zip(prod) {
                            *o += &(c * &q);
                        }
                    }
                }
                let want: Vec<Scalar> = cat.identities[y].iter().map(|v| v * &eps[i]).collect();
                ensure_zero(&sub_vec(&out, &want), || format!("basis {i} of hom({x},{y})"))?;
            }
        }
        Ok(())
    });
    rep.check(format!("S(h₂)∘h₁ = {second_name}(h)·id_x"), || {
        for (x, y) in cat.support() {
            let d = cat.dim(x, y);
            let sm = reversing_of(cat, s, x, y);
            let delta = second.delta_of(cat, x, y);
            let eps = eps_second.counit_of(cat, x, y);
            for i in 0..d {
                let v = apply_slot(&delta.column(i), &[d, d], 1, &sm);
                let dyx = cat.dim(y, x);
                let mut out = zero_vec(cat.dim(x, x));
                for (p, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        let prod = cat.product(x, y, x, &unit_vec(d, p / dyx), &unit_vec(dyx, p % dyx));
                        for (o, q) in out.iter_mut().zip(prod) {
                            *o += &(c * &q);
                        }
                    }
                }
                let want: Vec<Scalar> = cat.identities[x].iter().map(|v| v * &eps[i]).collect();
                ensure_zero(&sub_vec(&out, &want), || format!("basis {i} of hom({x},{y})"))?;
            }
        }
        Ok(())
    });
}

/// Hopf category: one enrichment and an antipode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfCategory {
    pub category: FiniteLinearCategory,
    pub enrichment: Enrichment,
    pub antipode: PairMap<Matrix>,
}

impl HopfCategory {
    /// Objects 1..n, every hom spanned by one grouplike u_xy, u_xy·u_yz = u_xz,
    /// S(u_xy) = u_yx.
    pub fn pair(n: usize) -> Self {
        let objects = FiniteSpace::numbered(n);
        let category = FiniteLinearCategory::unit_category(objects);
        let enrichment = Enrichment::grouplike(&category);
        let antipode = category.pairs().map(|p| (p, Matrix::identity(1))).collect();
        HopfCategory { category, enrichment, antipode }
    }

    /// One object whose endomorphisms are the Hopf algebra.
    pub fn from_hopf_algebra(h: &HopfAlgebraData) -> Self {
        let n = h.dim();
        let mut compose = BTreeMap::new();
        compose.insert((0, 0, 0), h.algebra.mul_tensor().clone());
        let category = FiniteLinearCategory {
            objects: FiniteSpace::singleton(),
            dims: vec![vec![n]],
            compose,
            identities: vec![h.algebra.unit().to_vec()],
        };
        let enrichment = Enrichment {
            delta: [((0, 0), h.delta.clone())].into_iter().collect(),
            counit: [((0, 0), h.counit.clone())].into_iter().collect(),
        };
        HopfCategory { category, enrichment, antipode: [((0, 0), h.antipode.clone())].into_iter().collect() }
    }
}

pub fn check_hopf_category(h: &HopfCategory) -> Report {
    let mut rep = Report::new("Hopf category");
    rep.absorb("category", h.category.check());
    check_enrichment(&mut rep, "(a)", &h.category, &h.enrichment);
    let e = &h.enrichment;
    check_reversal(&mut rep, &h.category, &h.antipode, (e, "ε", e), (e, "ε", e));
    rep.info("topological conditions", "trivial at finite X");
    rep
}

/// One category, two enrichments and a coupling functor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoupledHopfCategory {
    pub category: FiniteLinearCategory,
    pub left: Enrichment,
    pub right: Enrichment,
    pub coupling: PairMap<Matrix>,
}

impl CoupledHopfCategory {
    /// Both enrichments equal to the Hopf category's.
    pub fn from_hopf_category(h: &HopfCategory) -> Self {
        CoupledHopfCategory {
            category: h.category.clone(),
            left: h.enrichment.clone(),
            right: h.enrichment.clone(),
            coupling: h.antipode.clone(),
        }
    }
}

fn commuting_square(rep: &mut Report, name: &str, cat: &FiniteLinearCategory, a: &Enrichment, b: &Enrichment) {
    // (a ⊗ id) b = (id ⊗ b) a
    rep.check(name.to_string(), || {
        for (x, y) in cat.support() {
            let d = cat.dim(x, y);
            let (da, db) = (a.delta_of(cat, x, y), b.delta_of(cat, x, y));
            for i in 0..d {
                let lhs = apply_slot(&db.column(i), &[d, d], 0, &da);
                let rhs = apply_slot(&da.column(i), &[d, d], 1, &db);
                ensure_zero(&sub_vec(&lhs, &rhs), || format!("basis {i} of hom({x},{y})"))?;
            }
        }
        Ok(())
    });
}

pub fn check_coupled_category(c: &CoupledHopfCategory) -> Report {
    let mut rep = Report::new("coupled Hopf category");
    rep.absorb("category", c.category.check());
    check_enrichment(&mut rep, "left enrichment", &c.category, &c.left);
    check_enrichment(&mut rep, "right enrichment", &c.category, &c.right);
    let mut coupling = Report::new("coupling");
    check_reversal(&mut coupling, &c.category, &c.coupling, (&c.left, "εᴿ", &c.right), (&c.right, "εᴸ", &c.left));
    rep.absorb("(a) coupling", coupling);
    commuting_square(&mut rep, "(b) (Δᴸ⊗id)Δᴿ = (id⊗Δᴿ)Δᴸ", &c.category, &c.left, &c.right);
    commuting_square(&mut rep, "(b) (Δᴿ⊗id)Δᴸ = (id⊗Δᴸ)Δᴿ", &c.category, &c.right, &c.left);
    rep.info("topological conditions", "trivial at finite X");
    rep
}

/// Hom-wise right coaction of an enriched category 𝓗 on a category 𝓜 over
/// the same objects: ρ_{x,y}: 𝓜(x,y) → 𝓜(x,y) ⊗ 𝓗(x,y).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComoduleCategory {
    pub category: FiniteLinearCategory,
    pub coefficients: FiniteLinearCategory,
    pub enrichment: Enrichment,
    pub coaction: PairMap<Matrix>,
}

impl ComoduleCategory {
    pub fn new(
        category: FiniteLinearCategory,
        coefficients: FiniteLinearCategory,
        enrichment: Enrichment,
        coaction: PairMap<Matrix>,
    ) -> Result<Self, StructureError> {
        if category.len() != coefficients.len() {
            return Err(StructureError::BaseMismatch);
        }
        enrichment.validate(&coefficients)?;
        for (&(x, y), m) in &coaction {
            if x >= category.len() || y >= category.len() || m.shape() != (category.dim(x, y) * coefficients.dim(x, y), category.dim(x, y)) {
                return Err(shape(format!("coaction on hom({x},{y}) has the wrong shape")));
            }
        }
        Ok(ComoduleCategory { category, coefficients, enrichment, coaction })
    }

    /// 𝓗 coacting on its own category by Δ.
    pub fn regular(coefficients: &FiniteLinearCategory, enrichment: &Enrichment) -> Self {
        ComoduleCategory {
            category: coefficients.clone(),
            coefficients: coefficients.clone(),
            enrichment: enrichment.clone(),
            coaction: enrichment.delta.clone(),
        }
    }

    pub fn rho(&self, x: usize, y: usize) -> Matrix {
        let (m, h) = (self.category.dim(x, y), self.coefficients.dim(x, y));
        self.coaction.get(&(x, y)).cloned().unwrap_or_else(|| Matrix::zeros(m * h, m))
    }

    /// Product in 𝓜 ⊗_X 𝓗 under the diagonal structure.
    fn diagonal_product(&self, x: usize, y: usize, z: usize, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let (m1, h1) = (self.category.dim(x, y), self.coefficients.dim(x, y));
        let (m2, h2) = (self.category.dim(y, z), self.coefficients.dim(y, z));
        let hz = self.coefficients.dim(x, z);
        let mut out = zero_vec(self.category.dim(x, z) * hz);
        for (p, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (q, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let m = self.category.product(x, y, z, &unit_vec(m1, p / h1), &unit_vec(m2, q / h2));
                let h = self.coefficients.product(x, y, z, &unit_vec(h1, p % h1), &unit_vec(h2, q % h2));
                let c = a * b;
                for (o, t) in out.iter_mut().zip(kron_vec(&m, &h)) {
                    if !t.is_zero() {
                        *o += &(&c * &t);
                    }
                }
            }
        }
        out
    }
}

pub fn check_comodule_category(m: &ComoduleCategory) -> Report {
    let mut rep = Report::new("comodule category");
    let cat = &m.category;
    let e = &m.enrichment;
    rep.absorb("category", cat.check());
    rep.check("coassociativity", || {
        for (x, y) in cat.support() {
            let (dm, dh) = (cat.dim(x, y), m.coefficients.dim(x, y));
            let rho = m.rho(x, y);
            let delta = e.delta_of(&m.coefficients, x, y);
            for i in 0..dm {
                let v = rho.column(i);
                let lhs = apply_slot(&v, &[dm, dh], 0, &rho);
                let rhs = apply_slot(&v, &[dm, dh], 1, &delta);
                ensure_zero(&sub_vec(&lhs, &rhs), || format!("basis {i} of hom({x},{y})"))?;
            }
        }
        Ok(())
    });
    rep.check("counitality", || {
        for (x, y) in cat.support() {
            let (dm, dh) = (cat.dim(x, y), m.coefficients.dim(x, y));
            let eps = Matrix::from_rows(vec![e.counit_of(&m.coefficients, x, y)]);
            let rho = m.rho(x, y);
            for i in 0..dm {
                let v = apply_slot(&rho.column(i), &[dm, dh], 1, &eps);
                ensure_zero(&sub_vec(&v, &unit_vec(dm, i)), || format!("basis {i} of hom({x},{y})"))?;
            }
        }
        Ok(())
    });
    rep.check("composition is a comodule map", || {
        let k = cat.len();
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    let (a, b) = (cat.dim(x, y), cat.dim(y, z));
                    for i in 0..a {
                        for j in 0..b {
                            let fg = cat.product(x, y, z, &unit_vec(a, i), &unit_vec(b, j));
                            let lhs = m.rho(x, z).mul_vec(&fg);
                            let rhs = m.diagonal_product(x, y, z, &m.rho(x, y).column(i), &m.rho(y, z).column(j));
                            ensure_zero(&sub_vec(&lhs, &rhs), || format!("basis {i} of hom({x},{y}), basis {j} of hom({y},{z})"))?;
                        }
                    }
                }
            }
        }
        Ok(())
    });
    rep.check("identities are coinvariant", || {
        for x in 0..cat.len() {
            let id = &cat.identities[x];
            let lhs = m.rho(x, x).mul_vec(id);
            ensure_zero(&sub_vec(&lhs, &kron_vec(id, &m.coefficients.identities[x])), || format!("ρ(id_{})", cat.objects.label(x)))?;
        }
        Ok(())
    });
    rep.info("topological conditions", "trivial at finite X");
    rep
}

/// Hom-wise coinvariants: ρ(α) = α ⊗ id_y read inside 𝓜(x,y) ⊗ 𝓗(x,y), where
/// id_y only has a component when x = y.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coinvariants {
    pub homs: PairMap<Subspace>,
    pub closed_under_composition: bool,
    pub contains_identities: bool,
}

impl Coinvariants {
    pub fn dims(&self) -> PairMap<usize> {
        self.homs.iter().map(|(k, s)| (*k, s.dim())).collect()
    }

    /// Coinvariants equal I_X: identities only.
    pub fn is_trivial(&self, cat: &FiniteLinearCategory) -> bool {
        self.homs.iter().all(|(&(x, y), s)| {
            if x == y {
                s.dim() == 1 && s.contains(&cat.identities[x])
            } else {
                s.dim() == 0
            }
        })
    }

    /// The coinvariant homs as a category, in the coordinates of their bases.
    pub fn as_category(&self, cat: &FiniteLinearCategory) -> Result<FiniteLinearCategory, StructureError> {
        let k = cat.len();
        let dims: Vec<Vec<usize>> = (0..k).map(|x| (0..k).map(|y| self.homs[&(x, y)].dim()).collect()).collect();
        let mut compose = BTreeMap::new();
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    let (a, b, c) = (&self.homs[&(x, y)], &self.homs[&(y, z)], &self.homs[&(x, z)]);
                    if a.dim() == 0 || b.dim() == 0 || c.dim() == 0 {
                        continue;
                    }
                    let mut cols = Vec::new();
                    for f in a.basis_vectors() {
                        for g in b.basis_vectors() {
                            let p = cat.product(x, y, z, &f, &g);
                            cols.push(c.coordinates(&p).ok_or_else(|| StructureError::Invalid("coinvariants are not closed under composition".into()))?);
                        }
                    }
                    compose.insert((x, y, z), Matrix::from_columns(c.dim(), &cols));
                }
            }
        }
        let identities = (0..k)
            .map(|x| self.homs[&(x, x)].coordinates(&cat.identities[x]).ok_or_else(|| StructureError::Invalid("identity is not coinvariant".into())))
            .collect::<Result<Vec<_>, _>>()?;
        FiniteLinearCategory::new(cat.objects.clone(), dims, compose, identities)
    }
}

pub fn category_coinvariants(m: &ComoduleCategory) -> Coinvariants {
    let cat = &m.category;
    let mut homs = PairMap::new();
    for (x, y) in cat.pairs() {
        let dm = cat.dim(x, y);
        let dh = m.coefficients.dim(x, y);
        let mut sys = m.rho(x, y);
        if x == y {
            let id = &m.coefficients.identities[x];
            let triv = Matrix::from_columns(dm * dh, &(0..dm).map(|i| kron_vec(&unit_vec(dm, i), id)).collect::<Vec<_>>());
            sys = sys.sub(&triv);
        }
        homs.insert((x, y), kernel_basis(&sys));
    }
    let k = cat.len();
    let mut closed = true;
    for x in 0..k {
        for y in 0..k {
            for z in 0..k {
                for f in homs[&(x, y)].basis_vectors() {
                    for g in homs[&(y, z)].basis_vectors() {
                        closed &= homs[&(x, z)].contains(&cat.product(x, y, z, &f, &g));
                    }
                }
            }
        }
    }
    let contains_identities = (0..k).all(|x| homs[&(x, x)].contains(&cat.identities[x]));
    Coinvariants { homs, closed_under_composition: closed, contains_identities }
}

/// One block of the Galois morphism: for objects (x,z), the map
/// ⊕_y 𝓜(x,y) ⊗ 𝓜(y,z) → ⊕_y 𝓜(x,z) ⊗ 𝓗(y,z), α⊗β ↦ (β₍₀₎∘α) ⊗ β₍₁₎.
pub fn galois_block(m: &ComoduleCategory, x: usize, z: usize) -> Matrix {
    let cat = &m.category;
    let k = cat.len();
    let dxz = cat.dim(x, z);
    let dom: usize = (0..k).map(|y| cat.dim(x, y) * cat.dim(y, z)).sum();
    let cod: usize = (0..k).map(|y| dxz * m.coefficients.dim(y, z)).sum();
    let mut out = Matrix::zeros(cod, dom);
    let (mut col0, mut row0) = (0, 0);
    for y in 0..k {
        let (a, b, h) = (cat.dim(x, y), cat.dim(y, z), m.coefficients.dim(y, z));
        let rho = m.rho(y, z);
        for i in 0..a {
            for j in 0..b {
                let col = col0 + i * b + j;
                let r = rho.column(j);
                for (p, c) in r.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let prod = cat.product(x, y, z, &unit_vec(a, i), &unit_vec(b, p / h));
                    for (u, v) in prod.iter().enumerate() {
                        if !v.is_zero() {
                            out.add_at(row0 + u * h + p % h, col, &(c * v));
                        }
                    }
                }
            }
        }
        col0 += a * b;
        row0 += dxz * h;
    }
    out
}

/// Verdict of the categorical Galois condition.
#[derive(Clone, Debug)]
pub struct CategoricalGalois {
    pub report: Report,
    pub coinvariants: Coinvariants,
    pub coinvariants_trivial: bool,
    pub blocks_bijective: bool,
}

impl CategoricalGalois {
    pub fn is_galois(&self) -> bool {
        self.coinvariants_trivial && self.blocks_bijective
    }
}

pub fn categorical_galois_check(m: &ComoduleCategory) -> CategoricalGalois {
    let mut report = Report::new("categorical Galois");
    let cat = &m.category;
    let coinvariants = category_coinvariants(m);
    let trivial = coinvariants.is_trivial(cat);
    report.check("(a) coinvariants = I_X", || {
        for (&(x, y), s) in &coinvariants.homs {
            let want = usize::from(x == y);
            ensure(s.dim() == want && (x != y || s.contains(&cat.identities[x])), || {
                format!("coinvariants of hom({},{}) have dimension {}", cat.objects.label(x), cat.objects.label(y), s.dim())
            })?;
        }
        Ok(())
    });
    let mut all = true;
    for (x, z) in cat.pairs() {
        let g = galois_block(m, x, z);
        let r = rank(&g);
        let ok = g.rows() == g.cols() && r == g.cols();
        all &= ok;
        let label = format!("(b) Galois block ({},{}) bijective", cat.objects.label(x), cat.objects.label(z));
        if ok {
            report.pass(label, format!("{}×{}", g.rows(), g.cols()));
        } else {
            report.fail(label, Witness::note(format!("{}×{} of rank {r}", g.rows(), g.cols())));
        }
    }
    CategoricalGalois { report, coinvariants, coinvariants_trivial: trivial, blocks_bijective: all }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_category_is_hopf() {
        for n in 1..=3 {
            let rep = check_hopf_category(&HopfCategory::pair(n));
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn zeroed_antipode_fails() {
        let mut h = HopfCategory::pair(2);
        h.antipode.insert((0, 1), Matrix::zeros(1, 1));
        let rep = check_hopf_category(&h);
        let row = rep.first_failure().unwrap();
        assert!(row.axiom.contains("S("), "{}", row.axiom);
        assert!(row.witness.is_some());
    }

    #[test]
    fn one_object_kc2() {
        let h = HopfCategory::from_hopf_algebra(&HopfAlgebraData::cyclic_group(2));
        assert!(check_hopf_category(&h).passed());
        let c = CoupledHopfCategory::from_hopf_category(&h);
        assert!(check_coupled_category(&c).passed());
    }

    #[test]
    fn untransposed_coupling_is_a_shape_error() {
        let h = HopfCategory::pair(2);
        let entries = vec![((0, 1), (0, 1), Matrix::identity(1))];
        assert!(matches!(reversing_maps(&h.category, entries), Err(StructureError::Shape(_))));
    }

    #[test]
    fn regular_coaction_coinvariants_and_galois() {
        let h = HopfCategory::pair(2);
        let m = ComoduleCategory::regular(&h.category, &h.enrichment);
        assert!(check_comodule_category(&m).passed());
        let co = category_coinvariants(&m);
        assert!(co.is_trivial(&m.category));
        assert!(co.closed_under_composition && co.contains_identities);
        let g = categorical_galois_check(&m);
        assert!(g.is_galois(), "{}", g.report);
    }

    #[test]
    fn trivial_category_coinvariants_are_everything() {
        let objects = FiniteSpace::numbered(2);
        let cat = FiniteLinearCategory::trivial(objects);
        let enr = Enrichment::grouplike(&cat);
        let m = ComoduleCategory::regular(&cat, &enr);
        let co = category_coinvariants(&m);
        assert_eq!(co.as_category(&cat).unwrap(), cat);
    }
}
