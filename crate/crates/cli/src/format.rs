//! JSON shapes for structures and cochains.
//!
//! Labels in files follow the structure's label base (1 unless stated),
//! so `{"i":1,"j":2}` is the pair `(X1, X2)`.

use poisson_core::{Bivector, ExteriorForm, IndexTuple, MultiDerivation, Polynomial};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub i: usize,
    pub j: usize,
    pub poly: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BivectorJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<usize>,
    pub entries: Vec<EntryJson>,
}

impl BivectorJson {
    pub fn base(&self) -> usize {
        self.base.unwrap_or(1)
    }

    pub fn to_bivector(&self) -> Result<Bivector, CliError> {
        let base = self.base();
        let mut entries = Vec::new();
        for e in &self.entries {
            let slot = |label: usize| {
                label
                    .checked_sub(base)
                    .filter(|&s| s < self.n)
                    .ok_or_else(|| CliError::Input(format!("label {label} out of range")))
            };
            let (i, j) = (slot(e.i)?, slot(e.j)?);
            if i >= j {
                return Err(CliError::Input(format!(
                    "entry ({}, {}) must have i < j",
                    e.i, e.j
                )));
            }
            entries.push((i, j, Polynomial::parse(&e.poly, self.n, base)?));
        }
        Ok(Bivector::from_entries(self.n, entries)?)
    }

    pub fn from_bivector(b: &Bivector, base: usize) -> Self {
        let entries = b
            .values()
            .map(|(t, p)| EntryJson {
                i: t.slots()[0] + base,
                j: t.slots()[1] + base,
                poly: p.to_text(base),
            })
            .collect();
        BivectorJson {
            n: b.nvars(),
            base: (base != 1).then_some(base),
            entries,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueJson {
    pub args: Vec<usize>,
    pub poly: String,
}

/// A k-cochain, given either by its values on increasing coordinate
/// tuples or by its exterior form `Phi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<ValueJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<String>,
}

impl CochainJson {
    pub fn to_cochain(&self, default_base: usize) -> Result<MultiDerivation, CliError> {
        let n = self.n;
        let base = self.base.unwrap_or(default_base);
        match (&self.values, &self.form) {
            (Some(values), None) => {
                let k = self
                    .k
                    .ok_or_else(|| CliError::Input(String::from("cochain values need \"k\"")))?;
                let mut out = MultiDerivation::zero(n, k);
                for v in values {
                    if v.args.len() != k {
                        return Err(CliError::Input(format!(
                            "expected {k} arguments, got {}",
                            v.args.len()
                        )));
                    }
                    let slots = v
                        .args
                        .iter()
                        .map(|&a| {
                            a.checked_sub(base)
                                .filter(|&s| s < n)
                                .ok_or_else(|| CliError::Input(format!("label {a} out of range")))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    let t = IndexTuple::new(slots)?;
                    let p = Polynomial::parse(&v.poly, n, base)?;
                    out.set(t.clone(), &out.value(&t) + &p);
                }
                Ok(out)
            }
            (None, Some(text)) => {
                let degree = self.k.map(|k| n.saturating_sub(k));
                let form = ExteriorForm::parse(text, n, base, degree)?;
                Ok(MultiDerivation::phi_inverse(&form))
            }
            _ => Err(CliError::Input(String::from(
                "a cochain needs exactly one of \"values\" and \"form\"",
            ))),
        }
    }

    pub fn from_cochain(phi: &MultiDerivation, base: usize) -> Self {
        let values = phi
            .values()
            .map(|(t, p)| ValueJson {
                args: t.slots().iter().map(|s| s + base).collect(),
                poly: p.to_text(base),
            })
            .collect();
        CochainJson {
            n: phi.nvars(),
            base: (base != 1).then_some(base),
            k: Some(phi.arity()),
            values: Some(values),
            form: None,
        }
    }
}
