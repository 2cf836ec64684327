//! Linear operators on degree-`n` coefficient vectors that factor as a
//! Kronecker product of one small matrix per descent position.
//!
//! Tensor products follow the convention `B ⊗ C = [c_{ij} B]`: the leftmost
//! factor acts on the least significant index bit. Under `φ` the factor for
//! descent `i` acts on bit `i - 1`; under `φ_γ` it acts on bit `σ_γ(i) - 1`.
//! A `1×1` factor occupies no bit at all, which is how restricted vectors
//! (indexed by `{α ≤ γ}`) arise.
//!
//! An operator stores the matrix `M` of a relation `X = M·Y` between column
//! vectors of functions, exactly as such relations are usually displayed.
//! [`StructuredOperator::apply`] computes `M·v`; coefficient vectors
//! transform with the transpose (`c_Y = Mᵀ c_X`), see
//! [`StructuredOperator::apply_transpose`].

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::composition::{check_basis_degree, Composition, GammaOrdering};
use crate::error::{Error, Result};
use crate::poly::{LaurentPoly, Var, VarFamily};

/// Below this many output entries a factor pass runs on one thread.
const PARALLEL_THRESHOLD: usize = 1 << 12;

/// A dense `rows × cols` matrix over Laurent polynomials, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl Factor {
    pub fn new(rows: usize, cols: usize, entries: Vec<LaurentPoly>) -> Result<Self> {
        if !(1..=2).contains(&rows) || !(1..=2).contains(&cols) {
            return Err(Error::DimensionMismatch { expected: 2, found: rows.max(cols) });
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: entries.len() });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &LaurentPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        Self { rows: self.cols, cols: self.rows, entries }
    }
}

/// Which rank function lays out the vector index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexOrdering {
    Phi,
    PhiGamma(GammaOrdering),
}

/// The operators that appear as tensor-product formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    /// `H̃(A;q,t) = ⊗ [[1, q^{n-i}], [1, t^i]] · R(A)`.
    ModifiedMacdonaldFromRibbon { n: usize },
    /// `H(A;q,t) = ⊗ [[1, q^{n-i}], [t^i, 1]] · R(A)`.
    MacdonaldFromRibbon { n: usize },
    /// `H̃|_γ(A;q,t)` in the `γ`-Schur basis at `1/t`: `[t^i]` on the
    /// descents of `γ`, `[[1, q^{n-i}], [1, t^i]]` elsewhere.
    ModifiedMacdonaldFromGammaSchur { level: Composition },
    /// `▼` on the modified Macdonald basis: `[[q^{n-i}, 0], [0, t^i]]`.
    NablaDiagonal { n: usize },
    /// `▼` on ribbons: `[[0, -q^{n-i}t^i], [1, t^i + q^{n-i}]]`.
    NablaRibbon { n: usize },
    /// `▼` on the `γ`-Schur basis at `1/t`: `[t^i]` on the descents of
    /// `γ`, the ribbon factor elsewhere.
    NablaGammaSchur { level: Composition },
    /// `▼H̃_α(A;t)` for `α ≤ γ` in the `γ`-Schur basis at `1/t`: `[t^{2i}]`
    /// on the descents of `γ`, `[[0, -t^i q^{n-i}], [t^i, t^{2i}]]` elsewhere.
    NablaModifiedHallLittlewood { level: Composition },
    /// `▼R^{(γ)}_α(A;1/t)` in the full ribbon basis (columns in `φ_γ`
    /// order): row `[1, t^i]` on the descents of `γ`, the ribbon factor
    /// elsewhere.
    NablaGammaSchurToRibbon { level: Composition },
}

impl OperatorKind {
    pub fn degree(&self) -> usize {
        match self {
            OperatorKind::ModifiedMacdonaldFromRibbon { n }
            | OperatorKind::MacdonaldFromRibbon { n }
            | OperatorKind::NablaDiagonal { n }
            | OperatorKind::NablaRibbon { n } => *n,
            OperatorKind::ModifiedMacdonaldFromGammaSchur { level }
            | OperatorKind::NablaGammaSchur { level }
            | OperatorKind::NablaModifiedHallLittlewood { level }
            | OperatorKind::NablaGammaSchurToRibbon { level } => level.degree(),
        }
    }

    pub fn level(&self) -> Option<Composition> {
        match self {
            OperatorKind::ModifiedMacdonaldFromGammaSchur { level }
            | OperatorKind::NablaGammaSchur { level }
            | OperatorKind::NablaModifiedHallLittlewood { level }
            | OperatorKind::NablaGammaSchurToRibbon { level } => Some(*level),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredOperator {
    degree: usize,
    family: VarFamily,
    ordering: IndexOrdering,
    /// `factors[i - 1]` governs descent `i`.
    factors: Vec<Factor>,
}

/// Builds entries of the form `t^{ki}` and `q^{n-i}` in either family.
struct Entries {
    n: usize,
    family: VarFamily,
}

impl Entries {
    fn t(&self, i: usize, k: i32) -> LaurentPoly {
        match self.family {
            VarFamily::TwoParam => LaurentPoly::qt(0, k * i as i32),
            VarFamily::Multivariate(_) => {
                LaurentPoly::monomial(self.family, &[(Var::Ti(i), k)], 1).expect("index in range")
            }
        }
    }

    fn q(&self, i: usize) -> LaurentPoly {
        match self.family {
            VarFamily::TwoParam => LaurentPoly::qt((self.n - i) as i32, 0),
            VarFamily::Multivariate(_) => {
                LaurentPoly::monomial(self.family, &[(Var::Qi(self.n - i), 1)], 1)
                    .expect("index in range")
            }
        }
    }

    fn one(&self) -> LaurentPoly {
        LaurentPoly::one(self.family)
    }

    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero(self.family)
    }

    fn qt(&self, i: usize) -> LaurentPoly {
        self.q(i).try_mul(&self.t(i, 1)).expect("same family")
    }

    fn ribbon_nabla(&self, i: usize) -> Vec<LaurentPoly> {
        let sum = self.t(i, 1).try_add(&self.q(i)).expect("same family");
        vec![self.zero(), -self.qt(i), self.one(), sum]
    }
}

impl StructuredOperator {
    pub fn new(
        degree: usize,
        family: VarFamily,
        ordering: IndexOrdering,
        factors: Vec<Factor>,
    ) -> Result<Self> {
        check_basis_degree(degree)?;
        let expected = degree.saturating_sub(1);
        if factors.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: factors.len() });
        }
        if let IndexOrdering::PhiGamma(ord) = &ordering {
            if ord.degree() != degree {
                return Err(Error::DegreeMismatch { left: degree, right: ord.degree() });
            }
        }
        for f in &factors {
            if let Some(bad) = f.entries.iter().find(|e| e.family() != family) {
                return Err(Error::FamilyMismatch(bad.family().to_string(), family.to_string()));
            }
        }
        Ok(Self { degree, family, ordering, factors })
    }

    /// The operator named by `kind`, with coefficients in `family`
    /// (`{q, t}` or the multivariate family of the right degree).
    pub fn build(kind: OperatorKind, family: VarFamily) -> Result<Self> {
        let n = kind.degree();
        check_basis_degree(n)?;
        if let VarFamily::Multivariate(m) = family {
            if m as usize != n.saturating_sub(1) {
                return Err(Error::FamilyMismatch(
                    family.to_string(),
                    VarFamily::multivariate_for_degree(n).to_string(),
                ));
            }
        }
        let e = Entries { n, family };
        let in_level = |i: usize| kind.level().is_some_and(|g| g.has_descent(i));
        let mut factors = Vec::with_capacity(n.saturating_sub(1));
        for i in 1..n {
            let f = match kind {
                OperatorKind::ModifiedMacdonaldFromRibbon { .. } => {
                    Factor::new(2, 2, vec![e.one(), e.q(i), e.one(), e.t(i, 1)])?
                }
                OperatorKind::MacdonaldFromRibbon { .. } => {
                    Factor::new(2, 2, vec![e.one(), e.q(i), e.t(i, 1), e.one()])?
                }
                OperatorKind::NablaDiagonal { .. } => {
                    Factor::new(2, 2, vec![e.q(i), e.zero(), e.zero(), e.t(i, 1)])?
                }
                OperatorKind::NablaRibbon { .. } => Factor::new(2, 2, e.ribbon_nabla(i))?,
                OperatorKind::ModifiedMacdonaldFromGammaSchur { .. } => {
                    if in_level(i) {
                        Factor::new(1, 1, vec![e.t(i, 1)])?
                    } else {
                        Factor::new(2, 2, vec![e.one(), e.q(i), e.one(), e.t(i, 1)])?
                    }
                }
                OperatorKind::NablaGammaSchur { .. } => {
                    if in_level(i) {
                        Factor::new(1, 1, vec![e.t(i, 1)])?
                    } else {
                        Factor::new(2, 2, e.ribbon_nabla(i))?
                    }
                }
                OperatorKind::NablaModifiedHallLittlewood { .. } => {
                    if in_level(i) {
                        Factor::new(1, 1, vec![e.t(i, 2)])?
                    } else {
                        Factor::new(2, 2, vec![e.zero(), -e.qt(i), e.t(i, 1), e.t(i, 2)])?
                    }
                }
                OperatorKind::NablaGammaSchurToRibbon { .. } => {
                    if in_level(i) {
                        Factor::new(1, 2, vec![e.one(), e.t(i, 1)])?
                    } else {
                        Factor::new(2, 2, e.ribbon_nabla(i))?
                    }
                }
            };
            factors.push(f);
        }
        let ordering = match kind.level() {
            Some(level) => IndexOrdering::PhiGamma(GammaOrdering::new(level)),
            None => IndexOrdering::Phi,
        };
        Self::new(n, family, ordering, factors)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn family(&self) -> VarFamily {
        self.family
    }

    pub fn ordering(&self) -> &IndexOrdering {
        &self.ordering
    }

    /// The factor governing descent `i`, `1 ≤ i ≤ n - 1`.
    pub fn factor(&self, i: usize) -> &Factor {
        &self.factors[i - 1]
    }

    /// Descent positions in bit order: slot `p` holds `σ^{-1}(p + 1)`.
    pub fn slot_descents(&self) -> Vec<usize> {
        match &self.ordering {
            IndexOrdering::Phi => (1..self.degree).collect(),
            IndexOrdering::PhiGamma(ord) => ord.slots().collect(),
        }
    }

    fn slot_factors(&self) -> Vec<&Factor> {
        self.slot_descents().into_iter().map(|i| self.factor(i)).collect()
    }

    pub fn input_dim(&self) -> usize {
        self.factors.iter().map(|f| f.cols).product()
    }

    pub fn output_dim(&self) -> usize {
        self.factors.iter().map(|f| f.rows).product()
    }

    pub fn transpose(&self) -> Self {
        Self {
            degree: self.degree,
            family: self.family,
            ordering: self.ordering.clone(),
            factors: self.factors.iter().map(Factor::transpose).collect(),
        }
    }

    /// `M·v`, one factor at a time along its own index digit.
    pub fn apply(&self, v: &[LaurentPoly]) -> Result<Vec<LaurentPoly>> {
        if v.len() != self.input_dim() {
            return Err(Error::DimensionMismatch { expected: self.input_dim(), found: v.len() });
        }
        if let Some(bad) = v.iter().find(|x| x.family() != self.family) {
            return Err(Error::FamilyMismatch(bad.family().to_string(), self.family.to_string()));
        }
        let slots = self.slot_factors();
        let mut radix: Vec<usize> = slots.iter().map(|f| f.cols).collect();
        let mut cur = v.to_vec();
        for (p, f) in slots.iter().enumerate() {
            if f.rows == 1 && f.cols == 1 && f.entries[0].is_one() {
                continue;
            }
            let inner: usize = radix[..p].iter().product();
            let outer: usize = radix[p + 1..].iter().product();
            let (r, c) = (f.rows, f.cols);
            let src = &cur;
            let cell = |idx: usize| -> LaurentPoly {
                let i = idx % inner;
                let a = (idx / inner) % r;
                let o = idx / (inner * r);
                let mut acc = LaurentPoly::zero(self.family);
                for b in 0..c {
                    let m = f.get(a, b);
                    let x = &src[i + inner * (b + c * o)];
                    if !m.is_zero() && !x.is_zero() {
                        acc.add_product_assign(m, x).expect("families checked");
                    }
                }
                acc
            };
            let len = inner * r * outer;
            cur = if len >= PARALLEL_THRESHOLD {
                (0..len).into_par_iter().map(cell).collect()
            } else {
                (0..len).map(cell).collect()
            };
            radix[p] = r;
        }
        Ok(cur)
    }

    /// `Mᵀ·v`.
    pub fn apply_transpose(&self, v: &[LaurentPoly]) -> Result<Vec<LaurentPoly>> {
        self.transpose().apply(v)
    }

    /// `M·e_j` for every input index `j`, in parallel: the columns of `M`.
    pub fn columns(&self) -> Result<Vec<Vec<LaurentPoly>>> {
        let dim = self.input_dim();
        (0..dim)
            .into_par_iter()
            .map(|j| {
                let mut e = vec![LaurentPoly::zero(self.family); dim];
                e[j] = LaurentPoly::one(self.family);
                self.apply(&e)
            })
            .collect()
    }

    pub fn to_json(&self) -> OperatorJson {
        OperatorJson {
            degree: self.degree,
            ordering: match &self.ordering {
                IndexOrdering::Phi => OrderingJson::Phi,
                IndexOrdering::PhiGamma(ord) => OrderingJson::PhiGamma { level: *ord.gamma() },
            },
            multivariate: matches!(self.family, VarFamily::Multivariate(_)),
            factors: self
                .factors
                .iter()
                .map(|f| FactorJson {
                    shape: [f.rows, f.cols],
                    entries: (0..f.rows)
                        .map(|r| (0..f.cols).map(|c| f.get(r, c).to_string()).collect())
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(js: &OperatorJson) -> Result<Self> {
        let family = if js.multivariate {
            VarFamily::multivariate_for_degree(js.degree)
        } else {
            VarFamily::TwoParam
        };
        let ordering = match &js.ordering {
            OrderingJson::Phi => IndexOrdering::Phi,
            OrderingJson::PhiGamma { level } => IndexOrdering::PhiGamma(GammaOrdering::new(*level)),
        };
        let factors = js
            .factors
            .iter()
            .map(|f| {
                let entries = f
                    .entries
                    .iter()
                    .flatten()
                    .map(|s| LaurentPoly::parse(s, family))
                    .collect::<Result<Vec<_>>>()?;
                Factor::new(f.shape[0], f.shape[1], entries)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(js.degree, family, ordering, factors)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorJson {
    pub degree: usize,
    pub ordering: OrderingJson,
    pub multivariate: bool,
    pub factors: Vec<FactorJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OrderingJson {
    Phi,
    PhiGamma { level: Composition },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub shape: [usize; 2],
    pub entries: Vec<Vec<String>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, VarFamily::TwoParam).unwrap()
    }

    #[test]
    fn n3_modified_macdonald_matrix() {
        let op = StructuredOperator::build(
            OperatorKind::ModifiedMacdonaldFromRibbon { n: 3 },
            VarFamily::TwoParam,
        )
        .unwrap();
        let expected = [
            ["1", "q^2", "q", "q^3"],
            ["1", "t", "q", "qt"],
            ["1", "q^2", "t^2", "q^2t^2"],
            ["1", "t", "t^2", "t^3"],
        ];
        let cols = op.columns().unwrap();
        for (r, row) in expected.iter().enumerate() {
            for (c, cell) in row.iter().enumerate() {
                assert_eq!(cols[c][r], p(cell), "row {r} col {c}");
            }
        }
    }

    #[test]
    fn identity_factors_leave_vectors_alone() {
        let one = LaurentPoly::one(VarFamily::TwoParam);
        let zero = LaurentPoly::zero(VarFamily::TwoParam);
        let id = Factor::new(2, 2, vec![one.clone(), zero.clone(), zero, one]).unwrap();
        let op =
            StructuredOperator::new(4, VarFamily::TwoParam, IndexOrdering::Phi, vec![id; 3])
                .unwrap();
        let v: Vec<_> = (0..8).map(|k| p(&format!("q^{k} + t"))).collect();
        assert_eq!(op.apply(&v).unwrap(), v);
    }

    #[test]
    fn dimensions_follow_factor_shapes() {
        let level = Composition::parse_label("211").unwrap();
        let op = StructuredOperator::build(
            OperatorKind::NablaGammaSchurToRibbon { level },
            VarFamily::TwoParam,
        )
        .unwrap();
        assert_eq!((op.output_dim(), op.input_dim()), (2, 8));
        assert_eq!(op.transpose().input_dim(), 2);
        assert!(matches!(op.apply(&[]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn json_round_trip() {
        let level = Composition::parse_label("131").unwrap();
        for family in [VarFamily::TwoParam, VarFamily::Multivariate(4)] {
            let op = StructuredOperator::build(
                OperatorKind::NablaModifiedHallLittlewood { level },
                family,
            )
            .unwrap();
            let js = serde_json::to_string(&op.to_json()).unwrap();
            let back: OperatorJson = serde_json::from_str(&js).unwrap();
            assert_eq!(StructuredOperator::from_json(&back).unwrap(), op);
        }
    }

    #[test]
    fn wrong_multivariate_arity_is_rejected() {
        assert!(StructuredOperator::build(
            OperatorKind::NablaRibbon { n: 4 },
            VarFamily::Multivariate(2)
        )
        .is_err());
    }
}
