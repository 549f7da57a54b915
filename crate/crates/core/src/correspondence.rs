//! Group catalog for the five tube-type families, stable-range bookkeeping,
//! the dual symmetric spaces `G′/H′` and symbolic descriptors of `Θ(π)`.
//!
//! Everything here is symbolic except the orbit representative `ξ` carried
//! by a [`ThetaDescriptor`], which is an actual element of the Jordan algebra.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::algebra::{make_algebra, AlgebraSpec, Element, Family, MAX_MATRIX_SIZE, MAX_SPIN_DIM};
use crate::error::{JordanError, Result};
use crate::orbit::{classify_orbit, orbit_representative_at};
use crate::spectral::Signature;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GroupFamily {
    /// `Sp(2n,R)`
    I1,
    /// `U(n,n)`
    I2,
    /// `O*(4n)`
    I3,
    /// `O(2,j)`
    I4,
    /// `E₇₍₋₂₅₎`
    I5,
}

impl GroupFamily {
    pub const ALL: [GroupFamily; 5] = [GroupFamily::I1, GroupFamily::I2, GroupFamily::I3, GroupFamily::I4, GroupFamily::I5];

    fn variable(self) -> &'static str {
        match self {
            GroupFamily::I4 => "j",
            _ => "n",
        }
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A family with its parameter: `n` for I1–I3, `j` for I4, nothing for I5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub family: GroupFamily,
    pub param: Option<usize>,
}

impl std::str::FromStr for GroupSpec {
    type Err = JordanError;

    /// Accepts `I1:5`, `sp:5`, `u:3`, `ostar:3`, `o2:5` (`j`), `E7` and
    /// similar spellings; case-insensitive.
    fn from_str(s: &str) -> Result<GroupSpec> {
        let lower = s.trim().to_ascii_lowercase();
        let (name, param) = match lower.split_once(':') {
            Some((a, b)) => {
                let p = b
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| JordanError::InvalidParameter(format!("group parameter must be an integer, got {b:?}")))?;
                (a.trim().to_string(), Some(p))
            }
            None => (lower.clone(), None),
        };
        let family = match name.as_str() {
            "i1" | "sp" => GroupFamily::I1,
            "i2" | "u" => GroupFamily::I2,
            "i3" | "ostar" | "o*" => GroupFamily::I3,
            "i4" | "o2" | "o2j" => GroupFamily::I4,
            "i5" | "e7" => GroupFamily::I5,
            _ => {
                return Err(JordanError::InvalidParameter(format!(
                    "unknown group {s:?}; expected I1..I5 (or sp, u, ostar, o2, E7) with :PARAM"
                )))
            }
        };
        Ok(GroupSpec { family, param })
    }
}

// Renders `a·x + b` either symbolically in the family variable or as a number.
#[derive(Debug, Clone, Copy)]
enum Param {
    Symbolic(&'static str),
    Value(usize),
}

impl Param {
    fn affine(self, a: i64, b: i64) -> String {
        match self {
            Param::Value(v) => (a * v as i64 + b).to_string(),
            Param::Symbolic(x) => {
                let lead = match a {
                    1 => x.to_string(),
                    _ => format!("{a}{x}"),
                };
                match b {
                    0 => lead,
                    b if b > 0 => format!("{lead}+{b}"),
                    b => format!("{lead}-{}", -b),
                }
            }
        }
    }

    // `k(x−1)` kept factored in symbolic form.
    fn multiple_of_pred(self, k: i64) -> String {
        match self {
            Param::Value(v) => (k * (v as i64 - 1)).to_string(),
            Param::Symbolic(x) if k == 1 => format!("{x}-1"),
            Param::Symbolic(x) => format!("{k}({x}-1)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupNames {
    #[serde(rename = "G")]
    pub g: String,
    #[serde(rename = "N")]
    pub n: String,
    #[serde(rename = "M'")]
    pub m_prime: String,
    #[serde(rename = "G_minus")]
    pub g_minus: String,
    /// Symbolic (`n-1`) in the generic row, numeric otherwise.
    pub m: String,
}

fn group_names(family: GroupFamily, p: Param) -> GroupNames {
    let names = |g: String, n: String, mp: String, gm: String, m: String| GroupNames { g, n, m_prime: mp, g_minus: gm, m };
    match family {
        GroupFamily::I1 => names(
            format!("Sp({},R)", p.affine(2, 0)),
            format!("Sym({},R)", p.affine(1, 0)),
            format!("Sp({},R)", p.affine(2, -2)),
            format!("Sp({},R)", p.affine(2, -2)),
            p.multiple_of_pred(1),
        ),
        GroupFamily::I2 => {
            let minus = format!("U({},{})", p.affine(1, -1), p.affine(1, -1));
            names(
                format!("U({},{})", p.affine(1, 0), p.affine(1, 0)),
                format!("Herm({},C)", p.affine(1, 0)),
                format!("U(1)×{minus}"),
                minus,
                p.multiple_of_pred(2),
            )
        }
        GroupFamily::I3 => {
            let minus = format!("O*({})", p.affine(4, -4));
            names(
                format!("O*({})", p.affine(4, 0)),
                format!("Herm({},H)", p.affine(1, 0)),
                format!("Sp(1)×{minus}"),
                minus,
                p.multiple_of_pred(4),
            )
        }
        GroupFamily::I4 => names(
            format!("O(2,{})", p.affine(1, 0)),
            format!("R^{{1,{}}}", p.affine(1, -1)),
            format!("SL(2,R)×O({})", p.affine(1, -2)),
            "SL(2,R)".into(),
            p.affine(1, -2),
        ),
        GroupFamily::I5 => names(
            "E₇₍₋₂₅₎".into(),
            "Herm(3,O)".into(),
            "SO(2,10)".into(),
            "SO(2,10)".into(),
            "16".into(),
        ),
    }
}

/// One row of the group catalog, specialised to a parameter value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupDescriptor {
    pub family: GroupFamily,
    pub param: Option<usize>,
    pub names: GroupNames,
    pub m: usize,
    /// The construction lives on a two-fold cover of `G`.
    pub needs_cover: bool,
    pub jordan_algebra: AlgebraSpec,
}

impl GroupDescriptor {
    /// Real rank of `G`, equal to the rank of `N`.
    pub fn rank(&self) -> usize {
        match self.family {
            GroupFamily::I4 => 2,
            GroupFamily::I5 => 3,
            _ => self.param.expect("I1-I3 carry n"),
        }
    }
}

pub fn catalog(family: GroupFamily, param: Option<usize>) -> Result<GroupDescriptor> {
    let bad = |msg: String| Err(JordanError::InvalidParameter(msg));
    let (param, jordan_algebra) = match (family, param) {
        (GroupFamily::I5, None | Some(3)) => (None, AlgebraSpec::new(Family::Albert, 3)),
        (GroupFamily::I5, Some(p)) => return bad(format!("E₇₍₋₂₅₎ takes no parameter (rank 3), got {p}")),
        (_, None) => return bad(format!("{family} needs a parameter {}", family.variable())),
        (GroupFamily::I4, Some(j)) => {
            if !(3..=MAX_SPIN_DIM + 1).contains(&j) {
                return bad(format!("O(2,j) needs 3 ≤ j ≤ {}, got {j}", MAX_SPIN_DIM + 1));
            }
            (Some(j), AlgebraSpec::new(Family::Spin, j - 1))
        }
        (_, Some(n)) => {
            if !(2..=MAX_MATRIX_SIZE).contains(&n) {
                return bad(format!("{family} needs 2 ≤ n ≤ {MAX_MATRIX_SIZE}, got {n}"));
            }
            let f = match family {
                GroupFamily::I1 => Family::SymR,
                GroupFamily::I2 => Family::HermC,
                _ => Family::HermH,
            };
            (Some(n), AlgebraSpec::new(f, n))
        }
    };
    let names = group_names(family, param.map_or(Param::Symbolic(family.variable()), Param::Value));
    let m = names.m.parse().expect("concrete m is numeric");
    let needs_cover = match family {
        GroupFamily::I1 => true,
        GroupFamily::I4 => param.is_some_and(|j| j % 2 == 1),
        _ => false,
    };
    Ok(GroupDescriptor { family, param, names, m, needs_cover, jordan_algebra })
}

pub fn catalog_spec(spec: GroupSpec) -> Result<GroupDescriptor> {
    catalog(spec.family, spec.param)
}

/// A tensor product `π_{p₁} ⊗ … ⊗ π_{p_s}` of singular representations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TensorProblem {
    pub group: GroupDescriptor,
    pub signatures: Vec<Signature>,
}

impl TensorProblem {
    /// Each `pᵢ` must label a nonzero singular orbit: `1 ≤ |pᵢ| < n`.
    pub fn new(group: GroupDescriptor, signatures: Vec<Signature>) -> Result<TensorProblem> {
        if signatures.is_empty() {
            return Err(JordanError::InvalidSignature("at least one signature is required".into()));
        }
        let n = group.rank();
        for p in &signatures {
            if p.rank() == 0 || p.rank() >= n {
                return Err(JordanError::InvalidSignature(format!(
                    "signature {p} does not label a nonzero singular orbit (need 1 ≤ |p| < {n})"
                )));
            }
        }
        Ok(TensorProblem { group, signatures })
    }

    pub fn total(&self) -> Signature {
        Signature::sum(&self.signatures)
    }

    pub fn total_rank(&self) -> usize {
        self.signatures.iter().map(|p| p.rank()).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StableRange {
    Strict,
    Equality,
    Violated,
}

/// Compare `Σ|pᵢ|` with the rank `n`.
pub fn stable_range(problem: &TensorProblem) -> StableRange {
    let total = problem.total_rank();
    let n = problem.group.rank();
    match total.cmp(&n) {
        std::cmp::Ordering::Less => StableRange::Strict,
        std::cmp::Ordering::Equal => StableRange::Equality,
        std::cmp::Ordering::Greater => StableRange::Violated,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DualSpace {
    Space { text: String, extrapolated: bool },
    NotDerivable { reason: String },
}

impl DualSpace {
    pub fn text(&self) -> Option<&str> {
        match self {
            DualSpace::Space { text, .. } => Some(text),
            DualSpace::NotDerivable { .. } => None,
        }
    }
}

// Signature entries either as numbers or as named symbols p⁺, p⁻.
#[derive(Clone, Copy)]
enum SigTerm {
    Concrete(Signature),
    Symbolic(&'static str),
}

impl SigTerm {
    fn plus(self) -> String {
        match self {
            SigTerm::Concrete(s) => s.plus.to_string(),
            SigTerm::Symbolic(x) => format!("{x}⁺"),
        }
    }

    fn minus(self) -> String {
        match self {
            SigTerm::Concrete(s) => s.minus.to_string(),
            SigTerm::Symbolic(x) => format!("{x}⁻"),
        }
    }
}

fn totals(terms: &[SigTerm]) -> (String, String) {
    if let Some(concrete) = terms
        .iter()
        .map(|t| match t {
            SigTerm::Concrete(s) => Some(*s),
            SigTerm::Symbolic(_) => None,
        })
        .collect::<Option<Vec<_>>>()
    {
        let s = Signature::sum(&concrete);
        return (s.plus.to_string(), s.minus.to_string());
    }
    let join = |f: fn(SigTerm) -> String| terms.iter().map(|t| f(*t)).collect::<Vec<_>>().join("+");
    (join(SigTerm::plus), join(SigTerm::minus))
}

// `X(Σp⁺,Σp⁻)/[X(p₁⁺,p₁⁻)×…]` for the classical families.
fn product_space(letter: &str, terms: &[SigTerm]) -> String {
    let (tp, tm) = totals(terms);
    let factors: Vec<String> = terms.iter().map(|t| format!("{letter}({},{})", t.plus(), t.minus())).collect();
    format!("{letter}({tp},{tm})/[{}]", factors.join("×"))
}

fn classical_letter(family: GroupFamily) -> Option<&'static str> {
    match family {
        GroupFamily::I1 => Some("O"),
        GroupFamily::I2 => Some("U"),
        GroupFamily::I3 => Some("Sp"),
        _ => None,
    }
}

#[derive(Clone, Copy)]
enum Template {
    Fixed(&'static str),
    // SO(j−1)/SO(j−2)
    SphereJ,
    // SO₀(1,j−2)/SO(j−2)
    HyperboloidJ,
}

impl Template {
    fn render(self, j: Param) -> String {
        match self {
            Template::Fixed(s) => s.to_string(),
            Template::SphereJ => format!("SO({})/SO({})", j.affine(1, -1), j.affine(1, -2)),
            Template::HyperboloidJ => format!("SO₀(1,{})/SO({})", j.affine(1, -2), j.affine(1, -2)),
        }
    }
}

// The exceptional and spin-factor pairs for which the dual space is known.
const SPECIAL_PAIRS: [(GroupFamily, Signature, Signature, Template); 7] = [
    (GroupFamily::I4, Signature::new(1, 0), Signature::new(1, 0), Template::SphereJ),
    (GroupFamily::I4, Signature::new(1, 0), Signature::new(0, 1), Template::HyperboloidJ),
    (GroupFamily::I5, Signature::new(1, 0), Signature::new(1, 0), Template::Fixed("SO(9)/SO(8)")),
    (GroupFamily::I5, Signature::new(1, 0), Signature::new(0, 1), Template::Fixed("SO₀(1,8)/SO(8)")),
    (GroupFamily::I5, Signature::new(1, 0), Signature::new(2, 0), Template::Fixed("F₄₍₋₅₂₎/Spin(9)")),
    (GroupFamily::I5, Signature::new(1, 0), Signature::new(0, 2), Template::Fixed("F₄₍₋₂₀₎/Spin(9)")),
    (GroupFamily::I5, Signature::new(1, 0), Signature::new(1, 1), Template::Fixed("F₄₍₋₂₀₎/Spin(1,8)")),
];

/// Identify `G′/H′` for the problem.
///
/// Sp, U and O* use the product formula (marked extrapolated for U and O*
/// beyond two factors). O(2,j) and E₇₍₋₂₅₎ are looked up among the known
/// pairs, in either order; other inputs are not derivable.
pub fn dual_pair_space(problem: &TensorProblem) -> Result<DualSpace> {
    if stable_range(problem) == StableRange::Violated {
        return Err(JordanError::InvalidSignature(format!(
            "stable range violated: Σ|pᵢ| = {} > n = {}",
            problem.total_rank(),
            problem.group.rank()
        )));
    }
    let family = problem.group.family;
    let sigs = &problem.signatures;
    if let Some(letter) = classical_letter(family) {
        let terms: Vec<SigTerm> = sigs.iter().map(|s| SigTerm::Concrete(*s)).collect();
        let extrapolated = family != GroupFamily::I1 && sigs.len() > 2;
        return Ok(DualSpace::Space { text: product_space(letter, &terms), extrapolated });
    }
    if sigs.len() != 2 {
        return Ok(DualSpace::NotDerivable {
            reason: format!("no dual space is known for {family} with {} factors", sigs.len()),
        });
    }
    let j = problem.group.param.map_or(Param::Symbolic("j"), Param::Value);
    let found = SPECIAL_PAIRS.iter().find(|(f, p, q, _)| {
        *f == family && ((sigs[0] == *p && sigs[1] == *q) || (sigs[0] == *q && sigs[1] == *p))
    });
    Ok(match found {
        Some((_, _, _, t)) => DualSpace::Space { text: t.render(j), extrapolated: false },
        None => DualSpace::NotDerivable {
            reason: format!("no dual space is known for {family} with p = {}, q = {}", sigs[0], sigs[1]),
        },
    })
}

fn classical_dim(family: GroupFamily, k: usize) -> usize {
    match family {
        GroupFamily::I1 => k * k.saturating_sub(1) / 2,
        GroupFamily::I2 => k * k,
        GroupFamily::I3 => k * (2 * k + 1),
        _ => unreachable!("classical families only"),
    }
}

/// `(dim G′, dim H′)` for the product-formula families.
pub fn dual_space_dimensions(problem: &TensorProblem) -> Option<(usize, usize)> {
    classical_letter(problem.group.family)?;
    let f = problem.group.family;
    let g = classical_dim(f, problem.total_rank());
    let h = problem.signatures.iter().map(|p| classical_dim(f, p.rank())).sum();
    Some((g, h))
}

/// The inducing chain `Θ(π) = ν ⊗ Ind(π^∨ ⊗ χ_ξ)` for a problem.
#[derive(Debug, Clone, Serialize)]
pub struct InducingChain {
    pub s_structure: String,
    pub xi: Element,
    pub chi_symbol: String,
    pub pi_label: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ThetaDescriptor {
    pub nu_symbol: String,
    pub inducing_chain: InducingChain,
    pub lie_algebra_shape: String,
    pub formula: String,
    pub notes: Vec<String>,
}

/// Build the descriptor with `ξ = Σ ξ_{pᵢ}`, the representatives placed on
/// consecutive disjoint blocks of the standard frame.
pub fn theta_descriptor(problem: &TensorProblem, pi_label: &str) -> Result<ThetaDescriptor> {
    if stable_range(problem) == StableRange::Violated {
        return Err(JordanError::InvalidSignature(format!(
            "stable range violated: Σ|pᵢ| = {} > n = {}",
            problem.total_rank(),
            problem.group.rank()
        )));
    }
    let spec = problem.group.jordan_algebra;
    let alg = make_algebra(spec.family, spec.param)?;
    let mut xi = Element::zero(&alg);
    let mut offset = 0;
    for p in &problem.signatures {
        xi = xi.add(&orbit_representative_at(&alg, *p, offset)?);
        offset += p.rank();
    }
    let observed = classify_orbit(&xi);
    if observed != problem.total() {
        return Err(JordanError::InvariantViolation(format!(
            "ξ classifies to {observed}, expected {}",
            problem.total()
        )));
    }
    Ok(ThetaDescriptor {
        nu_symbol: "ν".into(),
        inducing_chain: InducingChain {
            s_structure: "G′⋉Z".into(),
            xi,
            chi_symbol: "χ_ξ".into(),
            pi_label: pi_label.into(),
        },
        lie_algebra_shape: "(l₁+g′)+u".into(),
        formula: "ν⊗Ind_{SN}^{P̄}(π^∨⊗χ_ξ)".into(),
        notes: vec!["the normal subgroup of S is introduced as N but used as Z (and as u at Lie-algebra level); Z is used here".into()],
    })
}

/// Summary of what the correspondence says about a tensor product.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrespondenceReport {
    pub stable_range: StableRange,
    pub total_signature: Signature,
    pub dual_space: DualSpace,
    pub extension_unique: bool,
    pub notes: Vec<String>,
}

impl Serialize for CorrespondenceReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            stable_range: StableRange,
            total_signature: Signature,
            dual_space: Option<&'a str>,
            extrapolated: bool,
            extension_unique: bool,
            notes: &'a [String],
        }
        let extrapolated = matches!(self.dual_space, DualSpace::Space { extrapolated: true, .. });
        Repr {
            stable_range: self.stable_range,
            total_signature: self.total_signature,
            dual_space: self.dual_space.text(),
            extrapolated,
            extension_unique: self.extension_unique,
            notes: &self.notes,
        }
        .serialize(serializer)
    }
}

const MULTIPLICITY_FREE_SPACES: [&str; 3] = ["F₄₍₋₅₂₎/Spin(9)", "F₄₍₋₂₀₎/Spin(9)", "F₄₍₋₂₀₎/Spin(1,8)"];

pub fn correspondence_report(problem: &TensorProblem) -> CorrespondenceReport {
    let range = stable_range(problem);
    let mut notes = Vec::new();
    if problem.group.needs_cover {
        notes.push(format!("representations live on the two-fold cover of {}", problem.group.names.g));
    }
    let dual_space = match dual_pair_space(problem) {
        Ok(d) => d,
        Err(e) => DualSpace::NotDerivable { reason: e.to_string() },
    };
    match &dual_space {
        DualSpace::NotDerivable { reason } => notes.push(reason.clone()),
        DualSpace::Space { extrapolated: true, .. } => {
            notes.push("product formula extended beyond two factors by analogy with Sp(2n,R)".into())
        }
        DualSpace::Space { .. } => {}
    }
    if range == StableRange::Violated {
        notes.push("outside the stable range: the sum of orbits has no dense orbit and no correspondence is asserted".into());
    }
    if range == StableRange::Equality {
        notes.push("boundary of the stable range: Θ(π) extends for almost every π but uniqueness is not asserted".into());
    }
    if problem.signatures.len() == 1 {
        notes.push(format!("single factor: the report describes π_{} itself", problem.signatures[0]));
    }
    if range != StableRange::Violated && problem.signatures.len() == 2 {
        let definite = problem.signatures.iter().all(|p| p.is_definite());
        if definite {
            notes.push("both orbits are definite: G′/H′ is Riemannian, m(π) ≤ 1 and the tensor product is multiplicity free".into());
        } else if dual_space.text().is_some_and(|t| MULTIPLICITY_FREE_SPACES.contains(&t)) {
            notes.push("G′/H′ is multiplicity free, so the tensor product is multiplicity free".into());
        }
    }
    CorrespondenceReport {
        stable_range: range,
        total_signature: problem.total(),
        dual_space,
        extension_unique: range == StableRange::Strict,
        notes,
    }
}

const SEPARATOR: &str = " | ";

/// The group table (`G | N | M′ | G₋ | m`, one row per family, symbolic in
/// `n` or `j`) and the table of dual spaces `X_pq` for two factors.
pub fn render_tables() -> (String, String) {
    let mut groups = vec!["G | N | M′ | G₋ | m".to_string()];
    for family in GroupFamily::ALL {
        let names = group_names(family, Param::Symbolic(family.variable()));
        groups.push([names.g, names.n, names.m_prime, names.g_minus, names.m].join(SEPARATOR));
    }

    let mut xpq = vec!["G | p | q | X_pq".to_string()];
    for family in [GroupFamily::I1, GroupFamily::I2, GroupFamily::I3] {
        let letter = classical_letter(family).expect("classical");
        let g = group_names(family, Param::Symbolic("n")).g;
        let space = product_space(letter, &[SigTerm::Symbolic("p"), SigTerm::Symbolic("q")]);
        xpq.push([g.as_str(), "p", "q", space.as_str()].join(SEPARATOR));
    }
    for (family, p, q, template) in SPECIAL_PAIRS {
        let g = group_names(family, Param::Symbolic(family.variable())).g;
        let space = template.render(Param::Symbolic("j"));
        xpq.push([g, p.to_string(), q.to_string(), space].join(SEPARATOR));
    }
    (groups.join("\n") + "\n", xpq.join("\n") + "\n")
}
