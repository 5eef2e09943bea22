//! Instance files: a versioned JSON document naming either a generator
//! recipe (hyperbolic, graph, rational, mixed) or explicit gluing data.
//!
//! ```json
//! { "schema": 1, "field": { "p": 3, "f": 1 },
//!   "instance": { "rational": { "d1": 1, "d2": 2, "n": 1, "seed": 7 } } }
//! ```
//!
//! Explicit matrices list their row and column twists; entry (j, i) is the
//! dense coefficient list (x⁰y^d first) of a form of degree rows[j] − cols[i],
//! each coefficient the index a + q·b of a + bα ∈ F_{q²}.

use anyhow::{anyhow, bail, Context, Result};
use herm_theta::gf::{field_from_params, field_make, FieldParams};
use herm_theta::hermitian::{HermBundle, Lagrangian, SkewHermBundle};
use herm_theta::projline::{Form, FormMatrix, SplitBundle};
use herm_theta::theta::{graph_instance, hyperbolic_instance, mixed_instance, rational_instance, InstanceKind, ThetaInstance};
use herm_theta::Field;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Params(FieldParams),
    Small { p: u32, f: u32 },
}

impl FieldSpec {
    pub fn field(&self) -> Result<&'static Field> {
        Ok(match self {
            FieldSpec::Params(p) => field_from_params(p)?,
            FieldSpec::Small { p, f } => field_make(*p, *f)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSpec {
    pub rows: Vec<i64>,
    pub cols: Vec<i64>,
    pub entries: Vec<Vec<Vec<u32>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleSpec {
    pub twists: Vec<i64>,
    pub h: MatrixSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum InstanceSpec {
    Hyperbolic { e: Vec<i64>, n: usize, seed: u64 },
    Graph { e: Vec<i64>, n: usize, seed: u64 },
    Rational { d1: i64, d2: i64, n: usize, seed: u64 },
    Mixed { d1: [i64; 2], d2: [i64; 2], n: usize, seed: u64 },
    Explicit { g: BundleSpec, l1: MatrixSpec, l2: MatrixSpec, f: BundleSpec },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub schema: u32,
    pub field: FieldSpec,
    pub instance: InstanceSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u128>,
}

/// Parses a document, reporting the JSON path of the first structural error.
pub fn parse_instance_file(text: &str, origin: &str) -> Result<InstanceFile> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: InstanceFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        anyhow!(herm_theta::Error::Instance { path: format!("{origin}: {path}"), msg: e.into_inner().to_string() })
    })?;
    if file.schema != SCHEMA {
        bail!(herm_theta::Error::Instance { path: format!("{origin}: schema"), msg: format!("unsupported schema {}", file.schema) });
    }
    Ok(file)
}

fn located(origin: &str, path: &str, e: impl std::fmt::Display) -> anyhow::Error {
    anyhow!(herm_theta::Error::Instance { path: format!("{origin}: {path}"), msg: e.to_string() })
}

impl MatrixSpec {
    pub fn build(&self, fld: &'static Field, path: &str) -> Result<FormMatrix> {
        if self.entries.len() != self.rows.len() {
            bail!("{path}.entries: expected {} rows, found {}", self.rows.len(), self.entries.len());
        }
        let mut forms = Vec::new();
        for (j, row) in self.entries.iter().enumerate() {
            if row.len() != self.cols.len() {
                bail!("{path}.entries[{j}]: expected {} entries, found {}", self.cols.len(), row.len());
            }
            for (i, coeffs) in row.iter().enumerate() {
                let d = self.rows[j] - self.cols[i];
                let expected = (d + 1).max(0) as usize;
                if coeffs.len() != expected && !(coeffs.is_empty() && d >= 0) {
                    bail!("{path}.entries[{j}][{i}]: a form of degree {d} needs {expected} coefficients");
                }
                if let Some(&c) = coeffs.iter().find(|&&c| c >= fld.q2()) {
                    bail!("{path}.entries[{j}][{i}]: {c} is not an element index below {}", fld.q2());
                }
                let cs: Vec<_> = coeffs.iter().map(|&c| fld.from_index(c)).collect();
                forms.push(if cs.is_empty() { Form::zero(d) } else { Form::from_dense(d, &cs) });
            }
        }
        Ok(FormMatrix::from_entries(&self.rows, &self.cols, forms)?)
    }

    pub fn of(fld: &'static Field, m: &FormMatrix) -> MatrixSpec {
        let entries = (0..m.nrows())
            .map(|j| {
                (0..m.ncols())
                    .map(|i| {
                        let f = m.get(j, i);
                        if f.deg() < 0 {
                            Vec::new()
                        } else {
                            f.dense(fld).iter().map(|c| c.index()).collect()
                        }
                    })
                    .collect()
            })
            .collect();
        MatrixSpec { rows: m.rows().to_vec(), cols: m.cols().to_vec(), entries }
    }
}

impl InstanceSpec {
    /// Validates and builds the instance; no enumeration happens here beyond
    /// the bounded checks of the Q-construction.
    pub fn build(&self, fld: &'static Field, origin: &str) -> Result<ThetaInstance> {
        let rng = |seed: u64| ChaCha8Rng::seed_from_u64(seed);
        let here = |path: &'static str| move |e: herm_theta::Error| located(origin, path, e);
        Ok(match self {
            InstanceSpec::Hyperbolic { e, n, seed } => {
                hyperbolic_instance(fld, &SplitBundle::new(e.clone()), *n, &mut rng(*seed)).map_err(here("instance"))?
            }
            InstanceSpec::Graph { e, n, seed } => {
                graph_instance(fld, &SplitBundle::new(e.clone()), *n, &mut rng(*seed)).map_err(here("instance"))?
            }
            InstanceSpec::Rational { d1, d2, n, seed } => {
                rational_instance(fld, *d1, *d2, *n, &mut rng(*seed)).map_err(here("instance"))?
            }
            InstanceSpec::Mixed { d1, d2, n, seed } => mixed_instance(fld, *d1, *d2, *n, &mut rng(*seed)).map_err(here("instance"))?,
            InstanceSpec::Explicit { g, l1, l2, f } => {
                let gh = g.h.build(fld, "instance.explicit.g.h").map_err(|e| located(origin, "instance.explicit.g.h", e))?;
                let gb = SkewHermBundle::new(fld, SplitBundle::new(g.twists.clone()), gh).map_err(here("instance.explicit.g"))?;
                let lag = |m: &MatrixSpec, path: &'static str| -> Result<Lagrangian> {
                    let iota = m.build(fld, path).map_err(|e| located(origin, path, e))?;
                    Lagrangian::new(&gb, iota).map_err(|e| located(origin, path, e))
                };
                let (a, b) = (lag(l1, "instance.explicit.l1")?, lag(l2, "instance.explicit.l2")?);
                let fh = f.h.build(fld, "instance.explicit.f.h").map_err(|e| located(origin, "instance.explicit.f.h", e))?;
                let fb = HermBundle::new(fld, SplitBundle::new(f.twists.clone()), fh).map_err(here("instance.explicit.f"))?;
                ThetaInstance::new(InstanceKind::Explicit, gb, a, b, fb).map_err(here("instance"))?
            }
        })
    }

    /// Explicit gluing data of a built instance.
    pub fn explicit(inst: &ThetaInstance) -> InstanceSpec {
        let fld = inst.field();
        let bundle = |twists: &[i64], h: &FormMatrix| BundleSpec { twists: twists.to_vec(), h: MatrixSpec::of(fld, h) };
        InstanceSpec::Explicit {
            g: bundle(&inst.g.bundle().twists, inst.g.h()),
            l1: MatrixSpec::of(fld, inst.l1.iota()),
            l2: MatrixSpec::of(fld, inst.l2.iota()),
            f: bundle(&inst.f.bundle().twists, inst.f.h()),
        }
    }
}

/// SHA-256 of the explicit data and the field, as hex.
pub fn instance_hash(inst: &ThetaInstance) -> String {
    let doc = serde_json::json!({
        "field": inst.field().params(),
        "instance": InstanceSpec::explicit(inst),
    });
    hex::encode(Sha256::digest(doc.to_string().as_bytes()))
}

/// Reads and builds an instance file.
pub fn load(path: &std::path::Path) -> Result<(InstanceFile, ThetaInstance)> {
    let origin = path.display().to_string();
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {origin}"))?;
    let file = parse_instance_file(&text, &origin)?;
    let fld = file.field.field().map_err(|e| located(&origin, "field", e))?;
    let inst = file.instance.build(fld, &origin)?;
    Ok((file, inst))
}
