//! State families, their parameter constraints and separability thresholds,
//! PPT classification and reproducible random sampling.

use std::fmt;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symplectic::{CovarianceMatrix, PHYSICALITY_TOL, VACUUM_VARIANCE};

/// Slack used when comparing a PPT symplectic eigenvalue with 1/2.
pub const PPT_TOL: f64 = 1e-10;

/// Slack on closed-form parameter bounds.
const BOUND_TOL: f64 = 1e-12;

fn check_local(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() || v < VACUUM_VARIANCE {
        return Err(Error::Unphysical(format!("{name} = {v} violates {name} >= 1/2")));
    }
    Ok(())
}

fn ensure_physical(sigma: CovarianceMatrix) -> Result<CovarianceMatrix> {
    match sigma.min_symplectic_eigenvalue() {
        Ok(nu) if nu >= VACUUM_VARIANCE - PHYSICALITY_TOL => Ok(sigma),
        Ok(nu) => Err(Error::Unphysical(format!(
            "smallest symplectic eigenvalue {nu} is below 1/2"
        ))),
        Err(_) => Err(Error::Unphysical("covariance matrix is not positive definite".into())),
    }
}

/// Two-mode standard form: `sigma_a = a I`, `sigma_b = b I`, `c_ab = diag(c, d)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoModeStandardForm {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl TwoModeStandardForm {
    pub fn matrix(&self) -> Result<CovarianceMatrix> {
        let Self { a, b, c, d } = *self;
        CovarianceMatrix::from_row_slice(
            4,
            &[
                a, 0.0, c, 0.0, //
                0.0, a, 0.0, d, //
                c, 0.0, b, 0.0, //
                0.0, d, 0.0, b,
            ],
        )
    }

    pub fn build(&self) -> Result<CovarianceMatrix> {
        check_local("a", self.a)?;
        check_local("b", self.b)?;
        if !self.c.is_finite() || !self.d.is_finite() {
            return Err(Error::InvalidParams("correlations must be finite".into()));
        }
        ensure_physical(self.matrix()?)
    }

    /// Correlation box `max{sqrt((a+1/2)(b-1/2)), sqrt((a-1/2)(b+1/2))}`.
    pub fn correlation_box(a: f64, b: f64) -> f64 {
        let x = ((a + 0.5) * (b - 0.5)).max(0.0).sqrt();
        let y = ((a - 0.5) * (b + 0.5)).max(0.0).sqrt();
        x.max(y)
    }

    /// Boundary correlation of the `c_ab = diag(c, 0)` family, where
    /// physicality and separability coincide.
    pub fn prime_boundary(a: f64, b: f64) -> f64 {
        ((4.0 * a * a - 1.0) * (4.0 * b * b - 1.0) / (16.0 * a * b)).max(0.0).sqrt()
    }
}

/// Squeezed thermal state: standard form with `d = -c`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SqueezedThermalParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl SqueezedThermalParams {
    pub fn symmetric(a: f64, c: f64) -> Self {
        Self { a, b: a, c }
    }

    pub fn is_symmetric(&self) -> bool {
        self.a == self.b
    }

    pub fn standard_form(&self) -> TwoModeStandardForm {
        TwoModeStandardForm {
            a: self.a,
            b: self.b,
            c: self.c,
            d: -self.c,
        }
    }

    /// Largest physical `|c|`: `sqrt((max+1/2)(min-1/2))` over `{a, b}`,
    /// the smaller of the two correlation-box roots.
    pub fn c_max(a: f64, b: f64) -> f64 {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        ((hi + 0.5) * (lo - 0.5)).max(0.0).sqrt()
    }

    /// Separability threshold `sqrt((a-1/2)(b-1/2))`; `a - 1/2` when `a = b`.
    pub fn c_sep(a: f64, b: f64) -> f64 {
        if a == b {
            a - 0.5
        } else {
            ((a - 0.5) * (b - 0.5)).max(0.0).sqrt()
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_local("a", self.a)?;
        check_local("b", self.b)?;
        if !self.c.is_finite() {
            return Err(Error::InvalidParams("c must be finite".into()));
        }
        let cmax = Self::c_max(self.a, self.b);
        if self.c.abs() > cmax + BOUND_TOL {
            let bound = if self.is_symmetric() {
                "|c| <= sqrt(a^2 - 1/4)"
            } else {
                "|c| <= sqrt((max(a,b) + 1/2)(min(a,b) - 1/2))"
            };
            return Err(Error::Unphysical(format!(
                "|c| = {} violates {bound} = {cmax}",
                self.c.abs()
            )));
        }
        Ok(())
    }

    pub fn build(&self) -> Result<CovarianceMatrix> {
        self.validate()?;
        ensure_physical(self.standard_form().matrix()?)
    }
}

/// Local variances of a pure three-mode state in standard form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PureTripartiteParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// `(c_ij^+, c_ij^-)` for the pair `(i, j)`, with `k` the remaining variance.
pub fn pure_pair_correlations(i: f64, j: f64, k: f64) -> Result<(f64, f64)> {
    let dm = 4.0 * (i - j).powi(2);
    let dp = 4.0 * (i + j).powi(2);
    let lo = (2.0 * k - 1.0).powi(2);
    let hi = (2.0 * k + 1.0).powi(2);
    let first = (dm - lo) * (dm - hi);
    let second = (dp - lo) * (dp - hi);
    let scale = hi * hi;
    if first < -BOUND_TOL * scale || second < -BOUND_TOL * scale {
        return Err(Error::InvalidTriple(format!(
            "negative discriminant for pair ({i}, {j}) with remaining variance {k}"
        )));
    }
    let s1 = first.max(0.0).sqrt();
    let s2 = second.max(0.0).sqrt();
    let den = 16.0 * (i * j).sqrt();
    Ok(((s1 + s2) / den, (s1 - s2) / den))
}

impl PureTripartiteParams {
    pub fn symmetric(a: f64) -> Self {
        Self { a, b: a, c: a }
    }

    /// Checks `x >= 1/2` and the triangle-like constraints
    /// `|x_i - x_j| <= x_k - 1/2` for every labelling.
    pub fn validate(&self) -> Result<()> {
        let v = [self.a, self.b, self.c];
        for (name, x) in ["a", "b", "c"].iter().zip(v) {
            if !x.is_finite() || x < VACUUM_VARIANCE {
                return Err(Error::InvalidTriple(format!("{name} = {x} violates {name} >= 1/2")));
            }
        }
        for k in 0..3 {
            let (i, j) = ((k + 1) % 3, (k + 2) % 3);
            if (v[i] - v[j]).abs() > v[k] - 0.5 + BOUND_TOL * v[k].max(1.0) {
                return Err(Error::InvalidTriple(format!(
                    "|{} - {}| exceeds {} - 1/2 for (a, b, c) = ({}, {}, {})",
                    v[i], v[j], v[k], self.a, self.b, self.c
                )));
            }
        }
        Ok(())
    }

    pub fn correlations(&self) -> Result<[(f64, f64); 3]> {
        self.validate()?;
        let Self { a, b, c } = *self;
        Ok([
            pure_pair_correlations(a, b, c)?,
            pure_pair_correlations(a, c, b)?,
            pure_pair_correlations(b, c, a)?,
        ])
    }

    pub fn build(&self) -> Result<CovarianceMatrix> {
        let [(ab_p, ab_m), (ac_p, ac_m), (bc_p, bc_m)] = self.correlations()?;
        let Self { a, b, c } = *self;
        let sigma = CovarianceMatrix::from_row_slice(
            6,
            &[
                a, 0.0, ab_p, 0.0, ac_p, 0.0, //
                0.0, a, 0.0, ab_m, 0.0, ac_m, //
                ab_p, 0.0, b, 0.0, bc_p, 0.0, //
                0.0, ab_m, 0.0, b, 0.0, bc_m, //
                ac_p, 0.0, bc_p, 0.0, c, 0.0, //
                0.0, ac_m, 0.0, bc_m, 0.0, c,
            ],
        )?;
        let nu = sigma
            .symplectic_eigenvalues()
            .map_err(|_| Error::InvalidTriple("resulting matrix is not positive definite".into()))?;
        if nu.iter().any(|x| (x - VACUUM_VARIANCE).abs() > 1e-8) {
            return Err(Error::InvalidTriple(format!("resulting state is not pure: {nu:?}")));
        }
        Ok(sigma)
    }
}

/// Which fully symmetric three-mode family to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymmetricKind {
    /// Pure GHZ/W-like state.
    Pure,
    /// Mixed state with no two-mode entanglement.
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetricTripartiteParams {
    pub a: f64,
    pub kind: SymmetricKind,
}

impl SymmetricTripartiteParams {
    /// Correlations `(c+, c-)` shared by every pair.
    pub fn correlations(&self) -> Result<(f64, f64)> {
        let a = self.a;
        check_local("a", a)?;
        let a2 = a * a;
        Ok(match self.kind {
            SymmetricKind::Pure => {
                let root = ((4.0 * a2 - 1.0) * (36.0 * a2 - 1.0)).sqrt();
                ((4.0 * a2 - 1.0 + root) / (16.0 * a), (4.0 * a2 - 1.0 - root) / (16.0 * a))
            }
            SymmetricKind::Mixed => {
                let root = (36.0 * a2 * (4.0 * a2 - 2.0) + 25.0).sqrt();
                ((4.0 * a2 - 5.0 + root) / (16.0 * a), (5.0 - 36.0 * a2 + root) / (48.0 * a))
            }
        })
    }

    pub fn build(&self) -> Result<CovarianceMatrix> {
        let (cp, cm) = self.correlations()?;
        let a = self.a;
        let sigma = CovarianceMatrix::from_row_slice(
            6,
            &[
                a, 0.0, cp, 0.0, cp, 0.0, //
                0.0, a, 0.0, cm, 0.0, cm, //
                cp, 0.0, a, 0.0, cp, 0.0, //
                0.0, cm, 0.0, a, 0.0, cm, //
                cp, 0.0, cp, 0.0, a, 0.0, //
                0.0, cm, 0.0, cm, 0.0, a,
            ],
        )?;
        ensure_physical(sigma)
    }
}

/// Fully symmetric mixed three-mode state with local variance `a`.
pub fn build_symmetric_mixed_tripartite(a: f64) -> Result<CovarianceMatrix> {
    SymmetricTripartiteParams {
        a,
        kind: SymmetricKind::Mixed,
    }
    .build()
}

/// General three-mode standard form with local variances `a, b, c` and
/// correlation entries `c1..c9`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneralTripartiteParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub corr: [f64; 9],
}

impl GeneralTripartiteParams {
    pub fn matrix(&self) -> Result<CovarianceMatrix> {
        let Self { a, b, c, corr } = *self;
        let [c1, c2, c3, c4, c5, c6, c7, c8, c9] = corr;
        CovarianceMatrix::from_row_slice(
            6,
            &[
                a, 0.0, c1, 0.0, c3, c5, //
                0.0, a, 0.0, c2, 0.0, c4, //
                c1, 0.0, b, 0.0, c6, c8, //
                0.0, c2, 0.0, b, c9, c7, //
                c3, 0.0, c6, c9, c, 0.0, //
                c5, c4, c8, c7, 0.0, c,
            ],
        )
    }

    pub fn build(&self) -> Result<CovarianceMatrix> {
        check_local("a", self.a)?;
        check_local("b", self.b)?;
        check_local("c", self.c)?;
        if self.corr.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParams("correlations must be finite".into()));
        }
        ensure_physical(self.matrix()?)
    }
}

/// A bipartition tested by partial transposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Bipartition {
    #[serde(rename = "a|b")]
    AB,
    #[serde(rename = "a|bc")]
    ABc,
    #[serde(rename = "b|ac")]
    BAc,
    #[serde(rename = "c|ab")]
    CAb,
}

impl Bipartition {
    fn transposed_mode(self) -> usize {
        match self {
            Bipartition::AB => 1,
            Bipartition::ABc => 0,
            Bipartition::BAc => 1,
            Bipartition::CAb => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Bipartition::AB => "a|b",
            Bipartition::ABc => "a|bc",
            Bipartition::BAc => "b|ac",
            Bipartition::CAb => "c|ab",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PptTest {
    pub bipartition: Bipartition,
    /// Smallest symplectic eigenvalue of the partially transposed state.
    pub min_eigenvalue: f64,
    pub entangled: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeparabilityClass {
    Separable,
    Entangled,
    /// (i): NPT across all three bipartitions.
    FullyInseparable,
    /// (ii): separable across exactly one bipartition.
    OneBiseparable,
    /// (iii): separable across exactly two bipartitions.
    TwoBiseparable,
    /// (iv): PPT across all three bipartitions.
    ThreeBiseparable,
}

impl SeparabilityClass {
    /// Tripartite class from the number of NPT bipartitions.
    pub fn from_npt_count(count: usize) -> Self {
        match count {
            3 => SeparabilityClass::FullyInseparable,
            2 => SeparabilityClass::OneBiseparable,
            1 => SeparabilityClass::TwoBiseparable,
            _ => SeparabilityClass::ThreeBiseparable,
        }
    }

    pub fn short(self) -> &'static str {
        match self {
            SeparabilityClass::Separable => "separable",
            SeparabilityClass::Entangled => "entangled",
            SeparabilityClass::FullyInseparable => "i",
            SeparabilityClass::OneBiseparable => "ii",
            SeparabilityClass::TwoBiseparable => "iii",
            SeparabilityClass::ThreeBiseparable => "iv",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeparabilityVerdict {
    pub class: SeparabilityClass,
    pub bipartitions: Vec<PptTest>,
}

impl SeparabilityVerdict {
    pub fn npt_count(&self) -> usize {
        self.bipartitions.iter().filter(|t| t.entangled).count()
    }

    pub fn separable_bipartitions(&self) -> Vec<Bipartition> {
        self.bipartitions
            .iter()
            .filter(|t| !t.entangled)
            .map(|t| t.bipartition)
            .collect()
    }
}

/// `i`, `ii:b|ac`, `iii:a|bc+c|ab`, ... as written to datasets.
impl fmt::Display for SeparabilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.class.short())?;
        if matches!(
            self.class,
            SeparabilityClass::OneBiseparable | SeparabilityClass::TwoBiseparable
        ) {
            let seps: Vec<&str> = self.separable_bipartitions().iter().map(|b| b.label()).collect();
            write!(f, ":{}", seps.join("+"))?;
        }
        Ok(())
    }
}

/// PPT classification of a physical two- or three-mode state.
pub fn classify(sigma: &CovarianceMatrix) -> Result<SeparabilityVerdict> {
    classify_with_tol(sigma, PPT_TOL)
}

pub fn classify_with_tol(sigma: &CovarianceMatrix, tol: f64) -> Result<SeparabilityVerdict> {
    let splits: &[Bipartition] = match sigma.n_modes() {
        2 => &[Bipartition::AB],
        3 => &[Bipartition::ABc, Bipartition::BAc, Bipartition::CAb],
        n => return Err(Error::UnsupportedModeCount(n)),
    };
    if !sigma.is_physical(PHYSICALITY_TOL) {
        return Err(Error::Unphysical("state fails the uncertainty principle".into()));
    }
    let mut tests = Vec::with_capacity(splits.len());
    for &split in splits {
        let nu = sigma
            .partial_transpose(&[split.transposed_mode()])?
            .min_symplectic_eigenvalue()?;
        tests.push(PptTest {
            bipartition: split,
            min_eigenvalue: nu,
            entangled: nu < VACUUM_VARIANCE - tol,
        });
    }
    let npt = tests.iter().filter(|t| t.entangled).count();
    let class = if sigma.n_modes() == 2 {
        if npt == 1 {
            SeparabilityClass::Entangled
        } else {
            SeparabilityClass::Separable
        }
    } else {
        SeparabilityClass::from_npt_count(npt)
    };
    Ok(SeparabilityVerdict {
        class,
        bipartitions: tests,
    })
}

/// State family identifiers used by samplers, records and the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    SymSts,
    Sts,
    Standard,
    PureTri,
    SymMixedTri,
    GeneralTri,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::SymSts => "sym-sts",
            Family::Sts => "sts",
            Family::Standard => "standard",
            Family::PureTri => "pure-tri",
            Family::SymMixedTri => "sym-mixed-tri",
            Family::GeneralTri => "general-tri",
        }
    }

    pub fn n_modes(self) -> usize {
        match self {
            Family::SymSts | Family::Sts | Family::Standard => 2,
            _ => 3,
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Family::SymSts,
            Family::Sts,
            Family::Standard,
            Family::PureTri,
            Family::SymMixedTri,
            Family::GeneralTri,
        ]
        .into_iter()
        .find(|f| f.name() == s)
        .ok_or_else(|| Error::InvalidParams(format!("unknown family {s:?}")))
    }
}

/// A concrete member of one of the state families.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StateSpec {
    SymSts { a: f64, c: f64 },
    Sts(SqueezedThermalParams),
    Standard(TwoModeStandardForm),
    PureTri(PureTripartiteParams),
    SymMixedTri { a: f64 },
    GeneralTri(GeneralTripartiteParams),
}

impl StateSpec {
    pub fn family(&self) -> Family {
        match self {
            StateSpec::SymSts { .. } => Family::SymSts,
            StateSpec::Sts(_) => Family::Sts,
            StateSpec::Standard(_) => Family::Standard,
            StateSpec::PureTri(_) => Family::PureTri,
            StateSpec::SymMixedTri { .. } => Family::SymMixedTri,
            StateSpec::GeneralTri(_) => Family::GeneralTri,
        }
    }

    pub fn build(&self) -> Result<CovarianceMatrix> {
        match *self {
            StateSpec::SymSts { a, c } => SqueezedThermalParams::symmetric(a, c).build(),
            StateSpec::Sts(p) => p.build(),
            StateSpec::Standard(p) => p.build(),
            StateSpec::PureTri(p) => p.build(),
            StateSpec::SymMixedTri { a } => build_symmetric_mixed_tripartite(a),
            StateSpec::GeneralTri(p) => p.build(),
        }
    }

    pub fn to_record(&self, seed: Option<u64>) -> ParamRecord {
        let mut r = ParamRecord::empty(self.family());
        r.seed = seed;
        match *self {
            StateSpec::SymSts { a, c } => {
                r.a = Some(a);
                r.c = Some(c);
            }
            StateSpec::Sts(p) => {
                r.a = Some(p.a);
                r.b = Some(p.b);
                r.c = Some(p.c);
            }
            StateSpec::Standard(p) => {
                r.a = Some(p.a);
                r.b = Some(p.b);
                r.c = Some(p.c);
                r.d = Some(p.d);
            }
            StateSpec::PureTri(p) => {
                r.a = Some(p.a);
                r.b = Some(p.b);
                r.c = Some(p.c);
            }
            StateSpec::SymMixedTri { a } => r.a = Some(a),
            StateSpec::GeneralTri(p) => {
                r.a = Some(p.a);
                r.b = Some(p.b);
                r.c = Some(p.c);
                r.set_corr(p.corr);
            }
        }
        r
    }

    pub fn from_record(r: &ParamRecord) -> Result<Self> {
        let need = |name: &str, v: Option<f64>| {
            v.ok_or_else(|| {
                Error::InvalidParams(format!("family {} requires parameter {name}", r.family.name()))
            })
        };
        Ok(match r.family {
            Family::SymSts => StateSpec::SymSts {
                a: need("a", r.a)?,
                c: need("c", r.c)?,
            },
            Family::Sts => StateSpec::Sts(SqueezedThermalParams {
                a: need("a", r.a)?,
                b: need("b", r.b)?,
                c: need("c", r.c)?,
            }),
            Family::Standard => StateSpec::Standard(TwoModeStandardForm {
                a: need("a", r.a)?,
                b: need("b", r.b)?,
                c: need("c", r.c)?,
                d: need("d", r.d)?,
            }),
            Family::PureTri => StateSpec::PureTri(PureTripartiteParams {
                a: need("a", r.a)?,
                b: need("b", r.b)?,
                c: need("c", r.c)?,
            }),
            Family::SymMixedTri => StateSpec::SymMixedTri { a: need("a", r.a)? },
            Family::GeneralTri => {
                let mut corr = [0.0; 9];
                for (k, slot) in corr.iter_mut().enumerate() {
                    *slot = need(&format!("c{}", k + 1), r.corr()[k])?;
                }
                StateSpec::GeneralTri(GeneralTripartiteParams {
                    a: need("a", r.a)?,
                    b: need("b", r.b)?,
                    c: need("c", r.c)?,
                    corr,
                })
            }
        })
    }
}

/// Flat parameter record; serializes with field names `family, a, b, c, d,
/// c1..c9, seed`, omitting absent parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamRecord {
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c3: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c4: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c5: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c6: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c7: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c8: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c9: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ParamRecord {
    pub fn empty(family: Family) -> Self {
        Self {
            family,
            a: None,
            b: None,
            c: None,
            d: None,
            c1: None,
            c2: None,
            c3: None,
            c4: None,
            c5: None,
            c6: None,
            c7: None,
            c8: None,
            c9: None,
            seed: None,
        }
    }

    pub fn corr(&self) -> [Option<f64>; 9] {
        [
            self.c1, self.c2, self.c3, self.c4, self.c5, self.c6, self.c7, self.c8, self.c9,
        ]
    }

    pub fn set_corr(&mut self, corr: [f64; 9]) {
        let slots = [
            &mut self.c1,
            &mut self.c2,
            &mut self.c3,
            &mut self.c4,
            &mut self.c5,
            &mut self.c6,
            &mut self.c7,
            &mut self.c8,
            &mut self.c9,
        ];
        for (slot, v) in slots.into_iter().zip(corr) {
            *slot = Some(v);
        }
    }
}

/// Uniform sampling intervals. `b` and `c` (local variances of the second and
/// third mode) default to `a`; `correlations` defaults to the family's known
/// bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplingRanges {
    pub a: [f64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub correlations: Option<[f64; 2]>,
}

impl SamplingRanges {
    pub fn default_for(family: Family) -> Self {
        match family {
            Family::SymSts | Family::Sts | Family::Standard | Family::SymMixedTri => Self {
                a: [0.5, 5.0],
                b: None,
                c: None,
                correlations: None,
            },
            Family::PureTri => Self {
                a: [0.5, 3.0],
                b: None,
                c: None,
                correlations: None,
            },
            Family::GeneralTri => Self {
                a: [0.5, 3.0],
                b: None,
                c: None,
                correlations: Some([-2.0, 2.0]),
            },
        }
    }

    fn b(&self) -> [f64; 2] {
        self.b.unwrap_or(self.a)
    }

    fn c(&self) -> [f64; 2] {
        self.c.unwrap_or(self.a)
    }
}

fn uniform(rng: &mut ChaCha8Rng, [lo, hi]: [f64; 2]) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

/// One accepted draw.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub index: usize,
    pub spec: StateSpec,
    /// Draws consumed, including the accepted one.
    pub attempts: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SamplingReport {
    pub accepted: usize,
    pub attempts: usize,
    pub acceptance_rate: f64,
    /// Acceptance below `1e-3`.
    pub low_acceptance: bool,
}

/// Reproducible rejection sampler.
///
/// Sample `i` is drawn from the ChaCha8 stream `i` of the 64-bit seed, so the
/// emitted set does not depend on how indices are split across workers.
#[derive(Clone, Debug, PartialEq)]
pub struct Sampler {
    pub family: Family,
    pub ranges: SamplingRanges,
    pub seed: u64,
    pub max_attempts: usize,
}

impl Sampler {
    pub fn new(family: Family, seed: u64) -> Self {
        Self {
            family,
            ranges: SamplingRanges::default_for(family),
            seed,
            max_attempts: 1_000_000,
        }
    }

    pub fn with_ranges(mut self, ranges: SamplingRanges) -> Self {
        self.ranges = ranges;
        self
    }

    fn propose(&self, rng: &mut ChaCha8Rng) -> StateSpec {
        let r = &self.ranges;
        match self.family {
            Family::SymSts => {
                let a = uniform(rng, r.a);
                let range = r
                    .correlations
                    .unwrap_or([0.0, SqueezedThermalParams::c_max(a, a)]);
                StateSpec::SymSts {
                    a,
                    c: uniform(rng, range),
                }
            }
            Family::Sts => {
                let a = uniform(rng, r.a);
                let b = uniform(rng, r.b());
                let range = r
                    .correlations
                    .unwrap_or([0.0, TwoModeStandardForm::correlation_box(a, b)]);
                StateSpec::Sts(SqueezedThermalParams {
                    a,
                    b,
                    c: uniform(rng, range),
                })
            }
            Family::Standard => {
                let a = uniform(rng, r.a);
                let b = uniform(rng, r.b());
                let range = r.correlations.unwrap_or_else(|| {
                    let w = TwoModeStandardForm::correlation_box(a, b);
                    [-w, w]
                });
                let c = uniform(rng, range);
                let d = uniform(rng, range);
                StateSpec::Standard(TwoModeStandardForm { a, b, c, d })
            }
            Family::PureTri => StateSpec::PureTri(PureTripartiteParams {
                a: uniform(rng, r.a),
                b: uniform(rng, r.b()),
                c: uniform(rng, r.c()),
            }),
            Family::SymMixedTri => StateSpec::SymMixedTri {
                a: uniform(rng, r.a),
            },
            Family::GeneralTri => {
                let a = uniform(rng, r.a);
                let b = uniform(rng, r.b());
                let c = uniform(rng, r.c());
                let range = r.correlations.unwrap_or([-2.0, 2.0]);
                let mut corr = [0.0; 9];
                for x in corr.iter_mut() {
                    *x = uniform(rng, range);
                }
                StateSpec::GeneralTri(GeneralTripartiteParams { a, b, c, corr })
            }
        }
    }

    /// Draws sample `index`, rejecting proposals that fail to build.
    pub fn draw(&self, index: usize) -> Result<Sample> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        for attempt in 1..=self.max_attempts {
            let spec = self.propose(&mut rng);
            if spec.build().is_ok() {
                return Ok(Sample {
                    index,
                    spec,
                    attempts: attempt,
                });
            }
        }
        Err(Error::LowAcceptance {
            accepted: 0,
            attempts: self.max_attempts,
        })
    }

    /// Lazily draws samples `0, 1, 2, ...`.
    pub fn iter(&self) -> impl Iterator<Item = Result<Sample>> + '_ {
        (0..).map(move |i| self.draw(i))
    }

    /// Draws samples `0..count` in parallel on the current rayon pool.
    pub fn sample(&self, count: usize) -> Result<(Vec<Sample>, SamplingReport)> {
        if count == 0 {
            return Err(Error::InvalidParams("sample count must be positive".into()));
        }
        let samples: Vec<Sample> = (0..count)
            .into_par_iter()
            .map(|i| self.draw(i))
            .collect::<Result<_>>()?;
        let attempts: usize = samples.iter().map(|s| s.attempts).sum();
        let rate = count as f64 / attempts as f64;
        Ok((
            samples,
            SamplingReport {
                accepted: count,
                attempts,
                acceptance_rate: rate,
                low_acceptance: rate < 1e-3,
            },
        ))
    }
}

/// Random physical state `S (⊕ nu_k I) S^T` with thermal symplectic
/// eigenvalues `nu_k` in `[1/2, 3]` and `S` a product of random phase
/// rotations, single-mode squeezers and beam splitters.
pub fn random_physical_state<R: Rng + ?Sized>(n_modes: usize, rng: &mut R) -> Result<CovarianceMatrix> {
    let dim = 2 * n_modes;
    let mut sigma = DMatrix::zeros(dim, dim);
    for k in 0..n_modes {
        let nu = 0.5 + 2.5 * rng.random::<f64>();
        sigma[(2 * k, 2 * k)] = nu;
        sigma[(2 * k + 1, 2 * k + 1)] = nu;
    }
    let mut s = DMatrix::<f64>::identity(dim, dim);
    for _layer in 0..2 {
        for k in 0..n_modes {
            let r = 2.0 * rng.random::<f64>() - 1.0;
            let theta = std::f64::consts::TAU * rng.random::<f64>();
            let mut local = DMatrix::<f64>::identity(dim, dim);
            let rot = crate::symplectic::rotation(theta);
            let sq = nalgebra::Matrix2::new(r.exp(), 0.0, 0.0, (-r).exp());
            let block = rot * sq;
            local.view_mut((2 * k, 2 * k), (2, 2)).copy_from(&block);
            s = local * s;
        }
        for i in 0..n_modes {
            for j in (i + 1)..n_modes {
                let t = std::f64::consts::PI * rng.random::<f64>();
                let (st, ct) = t.sin_cos();
                let mut bs = DMatrix::<f64>::identity(dim, dim);
                for q in 0..2 {
                    let (x, y) = (2 * i + q, 2 * j + q);
                    bs[(x, x)] = ct;
                    bs[(y, y)] = ct;
                    bs[(x, y)] = st;
                    bs[(y, x)] = -st;
                }
                s = bs * s;
            }
        }
    }
    CovarianceMatrix::new(&s * sigma * s.transpose())
}
