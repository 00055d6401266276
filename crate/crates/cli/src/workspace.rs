//! The workspace file format: a single human-writable TOML file declaring
//! the group, named representations, the Ext-coefficient spaces, named
//! objects and complexes, and an optional weight band. All rationals are
//! written as strings ("3", "-1/2") so no float ever touches the data.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use motivecalc_core::derived::{Complex, Degree};
use motivecalc_core::exactla::{fmt_rat, parse_rat, RatMatrix};
use motivecalc_core::galois::{FiniteGroup, GRep, PermGroup};
use motivecalc_core::mixed::{ExtDatum, MixedMorphism, MixedObject};
use motivecalc_core::pure::{GradedObject, PureMorphism, Twist};

use crate::CliError;

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawWorkspace {
    group: RawGroup,
    #[serde(default)]
    reps: BTreeMap<String, RawRep>,
    #[serde(default)]
    category: Option<RawCategory>,
    #[serde(default)]
    ext: Option<RawExt>,
    #[serde(default)]
    objects: BTreeMap<String, RawObject>,
    #[serde(default)]
    complexes: BTreeMap<String, RawComplex>,
    #[serde(default)]
    band: Option<RawBand>,
}

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    id: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    permutations: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawRep {
    #[serde(skip_serializing_if = "Option::is_none")]
    builtin: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    generator_matrices: Option<Vec<Vec<Vec<String>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    element_matrices: Option<Vec<Vec<Vec<String>>>>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawCategory {
    allowed: Vec<String>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawExt {
    #[serde(default)]
    spaces: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawObject {
    pieces: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    ops: Vec<RawOp>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawOp {
    d: i64,
    twist: Twist,
    matrix: Vec<Vec<String>>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawComplex {
    terms: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    diffs: Vec<RawDiff>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawDiff {
    degree: Degree,
    components: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawBand {
    min_weight: i32,
    max_weight: i32,
}

/// A fully validated workspace.
#[derive(Debug, Clone)]
pub struct Workspace {
    pub group: Arc<FiniteGroup>,
    pub perm: Option<PermGroup>,
    pub reps: BTreeMap<String, GRep>,
    /// Optional restriction of the generator pool to named representations.
    pub allowed: Option<Vec<String>>,
    pub datum: Arc<ExtDatum>,
    pub objects: BTreeMap<String, MixedObject>,
    pub complexes: BTreeMap<String, Complex>,
    pub band: (i32, i32),
}

fn malformed(path: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Malformed(format!("{path}: {msg}"))
}

fn parse_matrix(path: &str, rows: &[Vec<String>]) -> Result<RatMatrix, CliError> {
    let mut parsed = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (j, s) in row.iter().enumerate() {
            out.push(
                parse_rat(s).map_err(|e| malformed(&format!("{path}[{i}][{j}]"), e))?,
            );
        }
        parsed.push(out);
    }
    RatMatrix::from_rows(parsed).map_err(|e| malformed(path, e))
}

fn parse_int_key<T: std::str::FromStr>(path: &str, key: &str) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    key.parse::<T>()
        .map_err(|e| malformed(path, format!("bad integer key {key:?}: {e}")))
}

pub fn parse_workspace_str(text: &str) -> Result<Workspace, CliError> {
    let raw: RawWorkspace = toml::from_str(text)
        .map_err(|e| CliError::Malformed(format!("workspace syntax: {e}")))?;
    build_workspace(raw)
}

pub fn parse_workspace(path: &Path) -> Result<Workspace, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))?;
    parse_workspace_str(&text).map_err(|e| match e {
        CliError::Malformed(msg) => CliError::Malformed(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn build_workspace(raw: RawWorkspace) -> Result<Workspace, CliError> {
    // Group.
    let (group, perm) = match (&raw.group.table, &raw.group.permutations) {
        (Some(table), None) => {
            let id = raw.group.id.unwrap_or(0);
            let g = FiniteGroup::from_table(table.clone(), id)
                .map_err(|e| malformed("group.table", e))?;
            (g, None)
        }
        (None, Some(gens)) => {
            let degree = raw
                .group
                .degree
                .ok_or_else(|| malformed("group", "permutation input needs a degree"))?;
            let pg = PermGroup::from_generators(degree, gens)
                .map_err(|e| malformed("group.permutations", e))?;
            (pg.group.clone(), Some(pg))
        }
        (Some(_), Some(_)) => {
            return Err(malformed(
                "group",
                "give either a table or permutation generators, not both",
            ))
        }
        (None, None) => {
            return Err(malformed(
                "group",
                "missing: give a table or permutation generators",
            ))
        }
    };

    // Representations.
    let mut reps: BTreeMap<String, GRep> = BTreeMap::new();
    for (name, spec) in &raw.reps {
        let path = format!("reps.{name}");
        let rep = match (&spec.builtin, &spec.generator_matrices, &spec.element_matrices) {
            (Some(kind), None, None) => match kind.as_str() {
                "trivial" => GRep::trivial(group.clone()),
                "regular" => GRep::regular(group.clone()),
                "sign" => perm
                    .as_ref()
                    .ok_or_else(|| {
                        malformed(&path, "builtin 'sign' needs a permutation group")
                    })?
                    .sign_rep(),
                "permutation" => perm
                    .as_ref()
                    .ok_or_else(|| {
                        malformed(&path, "builtin 'permutation' needs a permutation group")
                    })?
                    .permutation_rep(),
                "standard" => perm
                    .as_ref()
                    .ok_or_else(|| {
                        malformed(&path, "builtin 'standard' needs a permutation group")
                    })?
                    .standard_rep(),
                other => {
                    return Err(malformed(
                        &path,
                        format!("unknown builtin representation {other:?}"),
                    ))
                }
            },
            (None, Some(mats), None) => {
                let pg = perm.as_ref().ok_or_else(|| {
                    malformed(&path, "generator matrices need a permutation group")
                })?;
                let dim = spec
                    .dim
                    .ok_or_else(|| malformed(&path, "generator matrices need a dim"))?;
                let parsed: Vec<RatMatrix> = mats
                    .iter()
                    .enumerate()
                    .map(|(i, m)| parse_matrix(&format!("{path}.generator_matrices[{i}]"), m))
                    .collect::<Result<_, _>>()?;
                GRep::from_generator_matrices(pg, dim, &parsed)
                    .map_err(|e| malformed(&path, e))?
            }
            (None, None, Some(mats)) => {
                let dim = spec
                    .dim
                    .ok_or_else(|| malformed(&path, "element matrices need a dim"))?;
                let parsed: Vec<RatMatrix> = mats
                    .iter()
                    .enumerate()
                    .map(|(i, m)| parse_matrix(&format!("{path}.element_matrices[{i}]"), m))
                    .collect::<Result<_, _>>()?;
                GRep::new(group.clone(), dim, parsed).map_err(|e| malformed(&path, e))?
            }
            _ => {
                return Err(malformed(
                    &path,
                    "give exactly one of builtin, generator_matrices, element_matrices",
                ))
            }
        };
        reps.insert(name.clone(), rep);
    }

    // Category restriction.
    let allowed = match &raw.category {
        None => None,
        Some(cat) => {
            for name in &cat.allowed {
                if !reps.contains_key(name) {
                    return Err(malformed(
                        "category.allowed",
                        format!("unresolved representation name {name:?}"),
                    ));
                }
            }
            Some(cat.allowed.clone())
        }
    };

    // Ext datum (the d ≥ 1 gate lives in the core constructor).
    let mut spaces = BTreeMap::new();
    if let Some(ext) = &raw.ext {
        for (key, name) in &ext.spaces {
            let d: i64 = parse_int_key("ext.spaces", key)?;
            let rep = reps.get(name).ok_or_else(|| {
                malformed(
                    &format!("ext.spaces.{key}"),
                    format!("unresolved representation name {name:?}"),
                )
            })?;
            spaces.insert(d, rep.clone());
        }
    }
    let datum = ExtDatum::new(group.clone(), spaces).map_err(|e| malformed("ext.spaces", e))?;

    // Band.
    let band = match &raw.band {
        Some(b) => {
            if b.min_weight > b.max_weight {
                return Err(malformed("band", "min_weight exceeds max_weight"));
            }
            (b.min_weight, b.max_weight)
        }
        None => (-8, 8),
    };

    // Objects.
    let mut objects: BTreeMap<String, MixedObject> = BTreeMap::new();
    for (name, spec) in &raw.objects {
        let path = format!("objects.{name}");
        let mut pieces = BTreeMap::new();
        for (key, rep_name) in &spec.pieces {
            let m: Twist = parse_int_key(&format!("{path}.pieces"), key)?;
            let rep = reps.get(rep_name).ok_or_else(|| {
                malformed(
                    &format!("{path}.pieces.{key}"),
                    format!("unresolved representation name {rep_name:?}"),
                )
            })?;
            pieces.insert(m, rep.clone());
        }
        let graded = GradedObject::new(group.clone(), pieces)
            .map_err(|e| malformed(&format!("{path}.pieces"), e))?;
        let mut ops = BTreeMap::new();
        for (i, op) in spec.ops.iter().enumerate() {
            let op_path = format!("{path}.ops[{i}]");
            if op.d < 1 {
                return Err(malformed(&op_path, "operator degree must be at least 1"));
            }
            let mat = parse_matrix(&format!("{op_path}.matrix"), &op.matrix)?;
            ops.insert((op.d as u32, op.twist), mat);
        }
        let obj = MixedObject::new(graded, datum.clone(), ops)
            .map_err(|e| malformed(&path, e))?;
        for &m in &obj.support() {
            let w = -2 * m;
            if w < band.0 || w > band.1 {
                return Err(malformed(
                    &path,
                    format!("twist {m} (weight {w}) lies outside the band [{}, {}]", band.0, band.1),
                ));
            }
        }
        objects.insert(name.clone(), obj);
    }

    // Complexes.
    let mut complexes: BTreeMap<String, Complex> = BTreeMap::new();
    for (name, spec) in &raw.complexes {
        let path = format!("complexes.{name}");
        let mut terms = BTreeMap::new();
        for (key, obj_name) in &spec.terms {
            let p: Degree = parse_int_key(&format!("{path}.terms"), key)?;
            let obj = objects.get(obj_name).ok_or_else(|| {
                malformed(
                    &format!("{path}.terms.{key}"),
                    format!("unresolved object name {obj_name:?}"),
                )
            })?;
            terms.insert(p, obj.clone());
        }
        let mut diffs = BTreeMap::new();
        for (i, diff) in spec.diffs.iter().enumerate() {
            let diff_path = format!("{path}.diffs[{i}]");
            let mut components = BTreeMap::new();
            for (key, rows) in &diff.components {
                let m: Twist = parse_int_key(&format!("{diff_path}.components"), key)?;
                components.insert(
                    m,
                    parse_matrix(&format!("{diff_path}.components.{key}"), rows)?,
                );
            }
            diffs.insert(
                diff.degree,
                PureMorphism { components } as MixedMorphism,
            );
        }
        let complex = Complex::new(datum.clone(), terms, diffs)
            .map_err(|e| malformed(&path, e))?;
        complexes.insert(name.clone(), complex);
    }

    Ok(Workspace {
        group,
        perm,
        reps,
        allowed,
        datum,
        objects,
        complexes,
        band,
    })
}

// ---------------------------------------------------------------------------
// Serialization (round trips and counterexample dumps)
// ---------------------------------------------------------------------------

fn matrix_strings(m: &RatMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| fmt_rat(m.at(r, c))).collect())
        .collect()
}

fn rep_to_raw(rep: &GRep) -> RawRep {
    RawRep {
        builtin: None,
        dim: Some(rep.dim()),
        generator_matrices: None,
        element_matrices: Some(
            (0..rep.group().order())
                .map(|g| matrix_strings(rep.action(g)))
                .collect(),
        ),
    }
}

/// Serializes a workspace back to TOML. Representations referenced by
/// objects are interned by structural equality and named r0, r1, ...;
/// everything is written by element matrices so the output is
/// self-contained.
pub struct WorkspaceWriter {
    raw: RawWorkspace,
    interned: Vec<GRep>,
}

impl WorkspaceWriter {
    pub fn new(group: &Arc<FiniteGroup>, datum: &Arc<ExtDatum>) -> Self {
        let mut writer = WorkspaceWriter {
            raw: RawWorkspace {
                group: RawGroup {
                    table: Some(
                        (0..group.order())
                            .map(|a| (0..group.order()).map(|b| group.mul(a, b)).collect())
                            .collect(),
                    ),
                    id: Some(group.id()),
                    degree: None,
                    permutations: None,
                },
                ..Default::default()
            },
            interned: Vec::new(),
        };
        let mut spaces = BTreeMap::new();
        for (&d, rep) in datum.spaces() {
            let name = writer.intern(rep);
            spaces.insert(d.to_string(), name);
        }
        if !spaces.is_empty() {
            writer.raw.ext = Some(RawExt { spaces });
        }
        writer
    }

    fn intern(&mut self, rep: &GRep) -> String {
        if let Some(i) = self.interned.iter().position(|r| r == rep) {
            return format!("r{i}");
        }
        self.interned.push(rep.clone());
        let name = format!("r{}", self.interned.len() - 1);
        self.raw.reps.insert(name.clone(), rep_to_raw(rep));
        name
    }

    pub fn add_band(&mut self, band: (i32, i32)) {
        self.raw.band = Some(RawBand {
            min_weight: band.0,
            max_weight: band.1,
        });
    }

    pub fn add_object(&mut self, name: &str, obj: &MixedObject) {
        let mut pieces = BTreeMap::new();
        for (&m, rep) in obj.graded().pieces() {
            let rep_name = self.intern(rep);
            pieces.insert(m.to_string(), rep_name);
        }
        let ops = obj
            .ops()
            .iter()
            .map(|(&(d, m), mat)| RawOp {
                d: d as i64,
                twist: m,
                matrix: matrix_strings(mat),
            })
            .collect();
        self.raw
            .objects
            .insert(name.to_string(), RawObject { pieces, ops });
    }

    pub fn add_complex(&mut self, name: &str, k: &Complex) {
        let mut terms = BTreeMap::new();
        for (&p, term) in k.terms() {
            let obj_name = format!("{name}_t{}", degree_tag(p));
            self.add_object(&obj_name, term);
            terms.insert(p.to_string(), obj_name);
        }
        let diffs = k
            .diffs()
            .iter()
            .map(|(&p, f)| RawDiff {
                degree: p,
                components: f
                    .components
                    .iter()
                    .map(|(&m, mat)| (m.to_string(), matrix_strings(mat)))
                    .collect(),
            })
            .collect();
        self.raw
            .complexes
            .insert(name.to_string(), RawComplex { terms, diffs });
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(&self.raw).expect("workspace data serializes")
    }
}

fn degree_tag(p: Degree) -> String {
    if p < 0 {
        format!("m{}", -p)
    } else {
        p.to_string()
    }
}
