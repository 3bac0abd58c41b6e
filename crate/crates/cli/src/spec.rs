//! The job specification read from a JSON document.

use nichols_core::exactnum::{Cyclotomic, Field};
use nichols_core::hwmod::WeightSpec;
use nichols_core::rmatrix::{FiniteAbelianGroup, GroupAssignment, GroupElem};
use nichols_core::weylgpd::{Bichar, MAX_RANK};
use serde::Deserialize;

use crate::CliError;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub conductor: u32,
    /// `q_ij = ζ_N^{braiding[i][j]}`.
    pub braiding: Vec<Vec<i64>>,
    #[serde(default)]
    pub group: Option<GroupSpec>,
    /// Highest weights of Verma modules; the standard weight when empty.
    #[serde(default)]
    pub weights: Vec<WeightJson>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub divisors: Vec<u32>,
    /// `g_i` as exponent vectors over the cyclic factors.
    pub g: Vec<Vec<i32>>,
    /// `γ_j`, with `γ_j(g_i) = Π_k ζ_{d_k}^{γ_jk g_ik}`.
    pub gamma: Vec<Vec<i32>>,
}

/// `Λ(K_i)` and `Λ(L_i)` as pairs `[e, s]` meaning `s·ζ_N^e`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightJson {
    pub k: Vec<(i64, Scalar)>,
    pub l: Vec<(i64, Scalar)>,
}

/// A rational number: an integer or `[num, den]`.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Frac(i64, i64),
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub max_degree: Option<u32>,
    pub full_dim_limit: Option<u128>,
    pub max_module_dim: Option<usize>,
    pub max_terms: Option<usize>,
    pub max_objects: Option<usize>,
    pub canonical_height: Option<u32>,
    /// 1-based letter preferred at the first step of the longest word.
    pub start_letter: Option<usize>,
}

pub const DEFAULT_MAX_DEGREE: u32 = 12;
pub const DEFAULT_FULL_DIM_LIMIT: u128 = 5000;
pub const DEFAULT_MAX_MODULE_DIM: usize = 5000;
pub const DEFAULT_MAX_TERMS: usize = 2_000_000;
pub const DEFAULT_MAX_OBJECTS: usize = 10_000;
pub const DEFAULT_CANONICAL_HEIGHT: u32 = 4;

pub fn parse(text: &str) -> Result<JobSpec, CliError> {
    let spec: JobSpec = serde_json::from_str(text).map_err(|e| CliError::Input(format!("spec: {e}")))?;
    spec.validate()?;
    Ok(spec)
}

impl JobSpec {
    fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Input(m));
        if self.conductor == 0 {
            return bad("conductor must be positive".into());
        }
        let r = self.braiding.len();
        if r == 0 || r > MAX_RANK {
            return bad(format!("rank must be between 1 and {MAX_RANK}"));
        }
        if self.braiding.iter().any(|row| row.len() != r) {
            return bad("braiding exponent matrix must be square".into());
        }
        for w in &self.weights {
            if w.k.len() != r || w.l.len() != r {
                return bad(format!("each weight needs {r} values for k and for l"));
            }
        }
        if let Some(g) = &self.group {
            if g.divisors.is_empty() || g.divisors.len() > 4 || g.divisors.contains(&0) {
                return bad("group divisors must be 1 to 4 positive integers".into());
            }
            let n = g.divisors.len();
            if g.g.len() != r || g.gamma.len() != r {
                return bad(format!("group needs {r} elements g and {r} characters gamma"));
            }
            if g.g.iter().chain(&g.gamma).any(|v| v.len() != n) {
                return bad(format!("group elements and characters need {n} entries"));
            }
        }
        let o = &self.options;
        let bounds = [
            o.max_degree.map(u128::from),
            o.full_dim_limit,
            o.canonical_height.map(u128::from),
            o.max_module_dim.map(|x| x as u128),
            o.max_terms.map(|x| x as u128),
            o.max_objects.map(|x| x as u128),
        ];
        if bounds.contains(&Some(0)) {
            return bad("bounds must be positive".into());
        }
        if let Some(s) = o.start_letter {
            if s == 0 || s > r {
                return bad(format!("start_letter must lie in 1..={r}"));
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.braiding.len()
    }

    pub fn field(&self) -> Field {
        Field::new(self.conductor)
    }

    pub fn bichar(&self) -> Result<Bichar, CliError> {
        Ok(Bichar::from_exponents(&self.field(), &self.braiding)?)
    }

    /// The group of the spec, or `Z/N^θ` with the standard assignment.
    pub fn group_assignment(&self, chi: &Bichar) -> Result<GroupAssignment, CliError> {
        let Some(g) = &self.group else {
            return Ok(GroupAssignment::minimal(chi)?);
        };
        let elem = |v: &[i32]| {
            let mut e: GroupElem = [0; 4];
            e[..v.len()].copy_from_slice(v);
            e
        };
        let group = FiniteAbelianGroup::new(&g.divisors)?;
        Ok(GroupAssignment {
            g: g.g.iter().map(|v| group.reduce(&elem(v))).collect(),
            gamma: g.gamma.iter().map(|v| group.reduce(&elem(v))).collect(),
            group,
        })
    }

    /// The weights of the spec, cycled to length `n`; the standard weight
    /// `Λ(K_i) = q_ii`, `Λ(L_i) = 1` when none is given.
    pub fn module_weights(&self, n: usize, standard: &WeightSpec) -> Result<Vec<WeightSpec>, CliError> {
        if self.weights.is_empty() {
            return Ok(vec![standard.clone(); n]);
        }
        let f = self.field();
        let value = |&(e, s): &(i64, Scalar)| -> Result<Cyclotomic, CliError> {
            let (num, den) = match s {
                Scalar::Int(a) => (a, 1),
                Scalar::Frac(a, b) => (a, b),
            };
            Ok(&f.rational(num, den)? * &f.root_of_unity(e))
        };
        let mut out = Vec::with_capacity(n);
        for w in self.weights.iter().cycle().take(n) {
            let k = w.k.iter().map(value).collect::<Result<Vec<_>, _>>()?;
            let l = w.l.iter().map(value).collect::<Result<Vec<_>, _>>()?;
            out.push(WeightSpec::new(k, l)?);
        }
        Ok(out)
    }
}
