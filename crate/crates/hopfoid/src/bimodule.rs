//! Functions on a finite set, bimodules with four base actions, balanced
//! tensor products and the idempotent fiber decomposition.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::StructureError;
use crate::linalg::{quotient, Matrix, QuotientSpace, Scalar, Subspace};

/// Ordered, labelled finite set. The order is normative for every index.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FiniteSpace {
    points: Vec<String>,
}

impl FiniteSpace {
    pub fn new(points: Vec<String>) -> Result<Self, StructureError> {
        let distinct: BTreeSet<&String> = points.iter().collect();
        if distinct.len() != points.len() {
            return Err(StructureError::Invalid("point labels must be distinct".into()));
        }
        Ok(FiniteSpace { points })
    }

    /// Points labelled "1", …, "n".
    pub fn numbered(n: usize) -> Self {
        FiniteSpace { points: (1..=n).map(|k| k.to_string()).collect() }
    }

    pub fn singleton() -> Self {
        FiniteSpace { points: vec!["*".into()] }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.points
    }

    pub fn label(&self, x: usize) -> &str {
        &self.points[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.points.iter().position(|p| p == label)
    }
}

/// The commutative algebra k^X with its point idempotents e_x.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BaseAlgebra {
    space: FiniteSpace,
}

impl BaseAlgebra {
    pub fn new(space: FiniteSpace) -> Self {
        BaseAlgebra { space }
    }

    pub fn numbered(n: usize) -> Self {
        Self::new(FiniteSpace::numbered(n))
    }

    pub fn singleton() -> Self {
        Self::new(FiniteSpace::singleton())
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.len()
    }

    pub fn idempotent(&self, x: usize) -> Vec<Scalar> {
        crate::linalg::unit_vec(self.dim(), x)
    }

    pub fn one(&self) -> Vec<Scalar> {
        vec![Scalar::one(); self.dim()]
    }

    /// Pointwise product.
    pub fn product(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| x * y).collect()
    }

    pub fn label(&self, x: usize) -> &str {
        self.space.label(x)
    }
}

/// The four ways the base acts on a module: left or right multiplication by
/// the image of the source or of the target map.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Action {
    LeftSource,
    LeftTarget,
    RightSource,
    RightTarget,
}

impl Action {
    pub const ALL: [Action; 4] =
        [Action::LeftSource, Action::LeftTarget, Action::RightSource, Action::RightTarget];

    fn slot(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Action::LeftSource => "λs",
            Action::LeftTarget => "λt",
            Action::RightSource => "ρs",
            Action::RightTarget => "ρt",
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Which action plays the left and which the right module structure.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BimoduleConvention {
    pub left: Action,
    pub right: Action,
}

impl BimoduleConvention {
    pub const fn new(left: Action, right: Action) -> Self {
        BimoduleConvention { left, right }
    }

    /// s(f)·h·s(g): the ring-side structure.
    pub const RING: Self = Self::new(Action::LeftSource, Action::RightSource);
    /// f·h·g = s(f)t(g)h, the coring of a left bialgebroid.
    pub const LEFT_CORING: Self = Self::new(Action::LeftSource, Action::LeftTarget);
    /// f·h·g = h s(g)t(f), the coring of a right bialgebroid.
    pub const RIGHT_CORING: Self = Self::new(Action::RightTarget, Action::RightSource);
}

impl fmt::Display for BimoduleConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.left, self.right)
    }
}

/// A vector space with four commuting representations of the base algebra,
/// each stored as the images of the point idempotents.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StructuredBimodule {
    base: BaseAlgebra,
    dim: usize,
    actions: [Vec<Matrix>; 4],
}

impl StructuredBimodule {
    /// Validating constructor.
    pub fn new(base: BaseAlgebra, dim: usize, actions: [Vec<Matrix>; 4]) -> Result<Self, StructureError> {
        let m = Self::new_unchecked(base, dim, actions)?;
        if let Some(problem) = m.defect() {
            return Err(StructureError::Invalid(problem));
        }
        Ok(m)
    }

    /// Only checks shapes. Used while verifying candidate structures whose
    /// actions may be broken; `defect` reports what is wrong.
    pub fn new_unchecked(base: BaseAlgebra, dim: usize, actions: [Vec<Matrix>; 4]) -> Result<Self, StructureError> {
        for (a, fam) in Action::ALL.iter().zip(&actions) {
            if fam.len() != base.dim() {
                return Err(StructureError::Shape(format!("action {a} has {} idempotents, base has {}", fam.len(), base.dim())));
            }
            if fam.iter().any(|m| m.shape() != (dim, dim)) {
                return Err(StructureError::Shape(format!("action {a} matrices must be {dim}×{dim}")));
            }
        }
        Ok(StructuredBimodule { base, dim, actions })
    }

    /// Every action is the same family; the base acting on itself is the
    /// case `family[x] = diag(e_x)`.
    pub fn uniform(base: BaseAlgebra, family: Vec<Matrix>) -> Result<Self, StructureError> {
        let dim = family.first().map_or(0, |m| m.rows());
        Self::new(base, dim, [family.clone(), family.clone(), family.clone(), family])
    }

    /// The base algebra as a bimodule over itself.
    pub fn regular(base: BaseAlgebra) -> Self {
        let n = base.dim();
        let fam: Vec<Matrix> = (0..n)
            .map(|x| {
                let mut m = Matrix::zeros(n, n);
                m.set(x, x, Scalar::one());
                m
            })
            .collect();
        Self::uniform(base, fam).expect("diagonal idempotents are valid")
    }

    pub fn base(&self) -> &BaseAlgebra {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, a: Action) -> &[Matrix] {
        &self.actions[a.slot()]
    }

    pub fn act(&self, a: Action, x: usize) -> &Matrix {
        &self.actions[a.slot()][x]
    }

    /// First violated module axiom, if any.
    pub fn defect(&self) -> Option<String> {
        let id = Matrix::identity(self.dim);
        for a in Action::ALL {
            let fam = self.action(a);
            let mut sum = Matrix::zeros(self.dim, self.dim);
            for (x, p) in fam.iter().enumerate() {
                sum = sum.add(p);
                for (y, q) in fam.iter().enumerate() {
                    let pq = p.mul(q);
                    let ok = if x == y { pq == *p } else { pq.is_zero() };
                    if !ok {
                        return Some(format!("action {a}: idempotents e_{} and e_{} are not orthogonal idempotents", self.base.label(x), self.base.label(y)));
                    }
                }
            }
            if sum != id {
                return Some(format!("action {a}: idempotents do not sum to the identity"));
            }
        }
        for (i, a) in Action::ALL.iter().enumerate() {
            for b in &Action::ALL[i + 1..] {
                for p in self.action(*a) {
                    for q in self.action(*b) {
                        if p.mul(q) != q.mul(p) {
                            return Some(format!("actions {a} and {b} do not commute"));
                        }
                    }
                }
            }
        }
        None
    }

    /// Apply the action of a general base element f = Σ f_x e_x.
    pub fn act_by(&self, a: Action, f: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (x, c) in f.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.act(a, x).scale(c));
            }
        }
        m
    }
}

/// Projector onto canonical representatives of `m ⊗_A n`:
/// P = Σ_x ρ(e_x) ⊗ λ(e_x), with ρ = `right` on m and λ = `left` on n.
/// Two plain tensors agree in the balanced tensor iff their P-images agree.
pub fn tensor_projector(m: &StructuredBimodule, right: Action, n: &StructuredBimodule, left: Action) -> Matrix {
    let k = m.base().dim();
    let mut p = Matrix::zeros(m.dim() * n.dim(), m.dim() * n.dim());
    for x in 0..k {
        p = p.add(&m.act(right, x).kron(n.act(left, x)));
    }
    p
}

/// The balanced tensor as an honest quotient, with the induced bimodule.
#[derive(Clone, Debug)]
pub struct BalancedTensor {
    pub quotient: QuotientSpace,
    pub module: StructuredBimodule,
}

/// `m ⊗_A n` as the quotient of the plain tensor by
/// span{(v ◁ e_x) ⊗ w − v ⊗ (e_x ▷ w)}. The outer actions (λ on m, ρ on n)
/// descend to the quotient.
pub fn balanced_tensor(
    m: &StructuredBimodule,
    n: &StructuredBimodule,
    cm: BimoduleConvention,
    cn: BimoduleConvention,
) -> Result<BalancedTensor, StructureError> {
    if m.base() != n.base() {
        return Err(StructureError::BaseMismatch);
    }
    let (dm, dn) = (m.dim(), n.dim());
    let total = dm * dn;
    let id_m = Matrix::identity(dm);
    let id_n = Matrix::identity(dn);
    let mut rels: Vec<Vec<Scalar>> = Vec::new();
    for x in 0..m.base().dim() {
        let r = m.act(cm.right, x).kron(&id_n).sub(&id_m.kron(n.act(cn.left, x)));
        for c in 0..total {
            let col = r.column(c);
            if !crate::linalg::is_zero_vec(&col) {
                rels.push(col);
            }
        }
    }
    let q = quotient(total, Subspace::span(total, &rels));
    let descend = |op: Matrix| q.projection().mul(&op).mul(q.section());
    let mut actions: [Vec<Matrix>; 4] = Default::default();
    for a in Action::ALL {
        let fam = (0..m.base().dim())
            .map(|x| match a {
                Action::LeftSource | Action::LeftTarget => descend(m.act(a, x).kron(&id_n)),
                Action::RightSource | Action::RightTarget => descend(id_m.kron(n.act(a, x))),
            })
            .collect();
        actions[a.slot()] = fam;
    }
    let module = StructuredBimodule::new_unchecked(m.base().clone(), q.dim(), actions)?;
    Ok(BalancedTensor { quotient: q, module })
}

/// Set of pairs (x, y) with a nonzero fiber.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SupportSet {
    pub pairs: BTreeSet<(usize, usize)>,
}

impl SupportSet {
    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.pairs.contains(&(x, y))
    }

    pub fn contains_diagonal(&self, n: usize) -> bool {
        (0..n).all(|x| self.contains(x, x))
    }

    pub fn is_diagonal(&self) -> bool {
        self.pairs.iter().all(|(x, y)| x == y)
    }

    /// Sorted label pairs, for JSON.
    pub fn labelled(&self, space: &FiniteSpace) -> Vec<(String, String)> {
        self.pairs.iter().map(|&(x, y)| (space.label(x).to_string(), space.label(y).to_string())).collect()
    }

    /// Text grid; rows are the first coordinate.
    pub fn grid(&self, space: &FiniteSpace) -> String {
        let w = space.labels().iter().map(|l| l.chars().count()).max().unwrap_or(1).max(1);
        let mut out = format!("{:w$} ", "");
        for l in space.labels() {
            out.push_str(&format!(" {l:>w$}"));
        }
        out.push('\n');
        for (x, lx) in space.labels().iter().enumerate() {
            out.push_str(&format!("{lx:>w$} "));
            for y in 0..space.len() {
                let mark = if self.contains(x, y) { "#" } else { "." };
                out.push_str(&format!(" {mark:>w$}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn dot(&self, space: &FiniteSpace) -> String {
        let mut out = String::from("digraph support {\n");
        for l in space.labels() {
            out.push_str(&format!("  \"{l}\";\n"));
        }
        for &(x, y) in &self.pairs {
            out.push_str(&format!("  \"{}\" -> \"{}\";\n", space.label(x), space.label(y)));
        }
        out.push_str("}\n");
        out
    }
}

/// One summand E_(x,y) with its inclusion (dim × d) and projection (d × dim).
#[derive(Clone, Debug)]
pub struct Fiber {
    pub subspace: Subspace,
    pub inclusion: Matrix,
    pub projection: Matrix,
}

impl Fiber {
    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }
}

/// All fibers of a bimodule, including the zero ones.
#[derive(Clone, Debug)]
pub struct FiberDecomposition {
    pub points: usize,
    pub fibers: BTreeMap<(usize, usize), Fiber>,
}

impl FiberDecomposition {
    pub fn fiber(&self, x: usize, y: usize) -> &Fiber {
        &self.fibers[&(x, y)]
    }

    pub fn support(&self) -> SupportSet {
        SupportSet { pairs: self.fibers.iter().filter(|(_, f)| f.dim() > 0).map(|(k, _)| *k).collect() }
    }

    pub fn total_dim(&self) -> usize {
        self.fibers.values().map(Fiber::dim).sum()
    }

    /// dim ⊕_y E_(x,y) for every x.
    pub fn row_ranks(&self) -> Vec<usize> {
        (0..self.points).map(|x| (0..self.points).map(|y| self.fiber(x, y).dim()).sum()).collect()
    }

    pub fn column_ranks(&self) -> Vec<usize> {
        (0..self.points).map(|y| (0..self.points).map(|x| self.fiber(x, y).dim()).sum()).collect()
    }
}

/// The sandwich projector e_x ▷ (−) ◁ e_y.
pub fn sandwich(m: &StructuredBimodule, c: BimoduleConvention, x: usize, y: usize) -> Matrix {
    m.act(c.left, x).mul(m.act(c.right, y))
}

pub fn fiber_decomposition(m: &StructuredBimodule, c: BimoduleConvention) -> FiberDecomposition {
    let k = m.base().dim();
    let mut fibers = BTreeMap::new();
    for x in 0..k {
        for y in 0..k {
            let p = sandwich(m, c, x, y);
            let subspace = Subspace::image(&p);
            let inclusion = subspace.basis().transpose();
            // coordinates in an echelon basis are the entries at its pivots
            let projection = p.select_rows(subspace.pivots());
            fibers.insert((x, y), Fiber { subspace, inclusion, projection });
        }
    }
    FiberDecomposition { points: k, fibers }
}

pub fn support(m: &StructuredBimodule, c: BimoduleConvention) -> SupportSet {
    let k = m.base().dim();
    let pairs = (0..k)
        .flat_map(|x| (0..k).map(move |y| (x, y)))
        .filter(|&(x, y)| !sandwich(m, c, x, y).is_zero())
        .collect();
    SupportSet { pairs }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_family(n: usize, pattern: &[usize]) -> Vec<Matrix> {
        // pattern[i] = point that basis vector i belongs to
        (0..n)
            .map(|x| Matrix::from_fn(pattern.len(), pattern.len(), |r, c| if r == c && pattern[r] == x { Scalar::one() } else { Scalar::zero() }))
            .collect()
    }

    #[test]
    fn regular_tensor_collapses() {
        let a = StructuredBimodule::regular(BaseAlgebra::numbered(3));
        let t = balanced_tensor(&a, &a, BimoduleConvention::RING, BimoduleConvention::RING).unwrap();
        assert_eq!(t.quotient.dim(), 3);
        let p = tensor_projector(&a, Action::RightSource, &a, Action::LeftSource);
        assert_eq!(p.trace(), Scalar::from_int(3));
    }

    #[test]
    fn singleton_tensor_is_plain() {
        let base = BaseAlgebra::singleton();
        let m = StructuredBimodule::uniform(base, vec![Matrix::identity(3)]).unwrap();
        let t = balanced_tensor(&m, &m, BimoduleConvention::RING, BimoduleConvention::RING).unwrap();
        assert_eq!(t.quotient.dim(), 9);
    }

    #[test]
    fn regular_support_is_diagonal() {
        let a = StructuredBimodule::regular(BaseAlgebra::numbered(2));
        let s = support(&a, BimoduleConvention::RING);
        assert!(s.is_diagonal() && s.contains_diagonal(2));
    }

    #[test]
    fn broken_family_is_rejected() {
        let base = BaseAlgebra::numbered(2);
        let fam = vec![Matrix::identity(2), Matrix::identity(2)];
        assert!(StructuredBimodule::uniform(base.clone(), fam).is_err());
        // all weight on one point is still a valid family
        assert!(StructuredBimodule::uniform(base.clone(), diag_family(2, &[0, 0])).is_ok());
        let good = diag_family(2, &[0, 1]);
        assert!(StructuredBimodule::uniform(base, good).is_ok());
    }

    #[test]
    fn grid_marks_support() {
        let a = StructuredBimodule::regular(BaseAlgebra::numbered(2));
        let g = support(&a, BimoduleConvention::RING).grid(a.base().space());
        assert_eq!(g, "   1 2\n1  # .\n2  . #\n");
    }
}
