use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{ComplexError, CubeComplex, CubeComplexBuilder, CubeId, SignedCoord};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeEntry {
    pub dim: usize,
    pub id: CubeId,
}

/// `iso` lists the image of each free face coordinate as a signed 1-based
/// coordinate of the target; negative means reversed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingEntry {
    pub cube: CubeId,
    pub face: usize,
    pub to: CubeId,
    pub iso: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub cubes: Vec<CubeEntry>,
    pub gluings: Vec<GluingEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<CubeId, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientations: Option<BTreeMap<CubeId, i8>>,
}

impl From<&CubeComplex> for ComplexJson {
    fn from(x: &CubeComplex) -> Self {
        let cubes = (0..x.cube_count())
            .map(|id| CubeEntry { dim: x.dim_of(id), id })
            .collect();
        let gluings = (0..x.cube_count())
            .flat_map(|id| {
                x.cube(id).faces.iter().enumerate().map(move |(slot, f)| GluingEntry {
                    cube: id,
                    face: slot,
                    to: f.target,
                    iso: f
                        .iso
                        .iter()
                        .map(|m| {
                            let k = m.coord as i64 + 1;
                            if m.flip {
                                -k
                            } else {
                                k
                            }
                        })
                        .collect(),
                })
            })
            .collect();
        ComplexJson {
            cubes,
            gluings,
            labels: x.labels().cloned(),
            orientations: x.orientations().cloned(),
        }
    }
}

impl TryFrom<ComplexJson> for CubeComplex {
    type Error = ComplexError;

    /// Input ids may be arbitrary; they are renumbered densely by
    /// `(dim, id)`.
    fn try_from(j: ComplexJson) -> Result<Self, ComplexError> {
        let mut entries = j.cubes.clone();
        entries.sort_by_key(|c| (c.dim, c.id));
        let mut b = CubeComplexBuilder::new();
        let mut ids: HashMap<CubeId, CubeId> = HashMap::new();
        for c in &entries {
            if ids.insert(c.id, b.add_cube(c.dim)).is_some() {
                return Err(ComplexError::Json(format!("duplicate cube id {}", c.id)));
            }
        }
        let lookup = |id: CubeId| ids.get(&id).copied().ok_or(ComplexError::UnknownCube(id));
        for g in &j.gluings {
            let iso = g
                .iso
                .iter()
                .map(|&k| {
                    if k == 0 {
                        Err(ComplexError::Json(format!("zero coordinate in iso of cube {}", g.cube)))
                    } else {
                        Ok(SignedCoord {
                            coord: k.unsigned_abs() as usize - 1,
                            flip: k < 0,
                        })
                    }
                })
                .collect::<Result<_, _>>()?;
            b.glue(lookup(g.cube)?, g.face, lookup(g.to)?, iso)?;
        }
        for (e, l) in j.labels.iter().flatten() {
            b.label(lookup(*e)?, l.clone());
        }
        for (e, &o) in j.orientations.iter().flatten() {
            if o != 1 && o != -1 {
                return Err(ComplexError::Json(format!("orientation of edge {e} must be 1 or -1")));
            }
            b.orient(lookup(*e)?, o);
        }
        b.build()
    }
}

impl CubeComplex {
    pub fn to_json(&self) -> ComplexJson {
        ComplexJson::from(self)
    }

    pub fn from_json_str(s: &str) -> Result<Self, ComplexError> {
        let j: ComplexJson = serde_json::from_str(s).map_err(|e| ComplexError::Json(e.to_string()))?;
        j.try_into()
    }
}
