use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::lattice::DilationMatrix;
use crate::torus::{Grid, TorusFunction};
use crate::{Complex64, Error, Result};

/// A dilation matrix, nested (`[[1,1],[1,-1]]`) or flat row-major
/// (`[1,1,1,-1]`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DilationSpec {
    Nested(Vec<Vec<i64>>),
    Flat(Vec<i64>),
}

impl DilationSpec {
    pub fn rows(&self) -> Result<Vec<Vec<i64>>> {
        match self {
            DilationSpec::Nested(rows) => Ok(rows.clone()),
            DilationSpec::Flat(flat) => {
                let n = (flat.len() as f64).sqrt().round() as usize;
                if n == 0 || n * n != flat.len() {
                    return Err(Error::Parse(format!(
                        "flat dilation has {} entries, not a square number",
                        flat.len()
                    )));
                }
                Ok(flat.chunks(n).map(<[i64]>::to_vec).collect())
            }
        }
    }

    pub fn to_dilation(&self) -> Result<DilationMatrix> {
        DilationMatrix::from_rows(&self.rows()?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoeffEntry {
    pub k: Vec<i64>,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub shape: Vec<usize>,
    pub values: Vec<[f64; 2]>,
}

/// One filter: `{"n", "representation", "coeffs" | "grid"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterSpec {
    pub n: usize,
    pub representation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<CoeffEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
}

/// Top level of a filter file: either a single filter inline or a bank
/// under `"filters"`, optionally with the dilation and scale.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dilation: Option<DilationSpec>,
    #[serde(default)]
    pub normalized: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representation: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<CoeffEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filters: Option<Vec<FilterSpec>>,
}

#[derive(Clone, Debug)]
pub struct LoadedFilters {
    pub dilation: Option<DilationMatrix>,
    pub normalized: bool,
    pub filters: Vec<TorusFunction>,
}

impl FilterSpec {
    pub fn to_function(&self) -> Result<TorusFunction> {
        match self.representation.as_str() {
            "coeff" => {
                let coeffs = self
                    .coeffs
                    .as_ref()
                    .ok_or_else(|| Error::Parse("representation \"coeff\" needs \"coeffs\"".into()))?;
                TorusFunction::from_coeffs(
                    self.n,
                    coeffs.iter().map(|c| (c.k.clone(), Complex64::new(c.re, c.im))),
                )
            }
            "grid" => {
                let g = self
                    .grid
                    .as_ref()
                    .ok_or_else(|| Error::Parse("representation \"grid\" needs \"grid\"".into()))?;
                if g.shape.len() != self.n {
                    return Err(Error::DimensionMismatch { expected: self.n, got: g.shape.len() });
                }
                let grid = Grid::new(g.shape.clone())?;
                let values = g.values.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
                TorusFunction::from_grid_values(grid, values)
            }
            other => Err(Error::Parse(format!("unknown representation {other:?}"))),
        }
    }

    pub fn from_function(f: &TorusFunction) -> Self {
        if let Some(c) = f.coefficients() {
            return Self {
                n: f.dim(),
                representation: "coeff".into(),
                coeffs: Some(c.iter().map(|(k, v)| CoeffEntry { k: k.clone(), re: v.re, im: v.im }).collect()),
                grid: None,
            };
        }
        let s = f.samples().expect("grid-only function");
        Self {
            n: f.dim(),
            representation: "grid".into(),
            coeffs: None,
            grid: Some(GridSpec {
                shape: s.grid().shape().to_vec(),
                values: s.values().iter().map(|z| [z.re, z.im]).collect(),
            }),
        }
    }
}

impl FilterFile {
    pub fn load(&self) -> Result<LoadedFilters> {
        let dilation = self.dilation.as_ref().map(DilationSpec::to_dilation).transpose()?;
        let inline = self.n.is_some() || self.representation.is_some();
        let specs: Vec<FilterSpec> = match (&self.filters, inline) {
            (Some(_), true) => {
                return Err(Error::Parse("give either an inline filter or \"filters\", not both".into()))
            }
            (Some(list), false) => list.clone(),
            (None, true) => vec![FilterSpec {
                n: self.n.ok_or_else(|| Error::Parse("missing \"n\"".into()))?,
                representation: self
                    .representation
                    .clone()
                    .ok_or_else(|| Error::Parse("missing \"representation\"".into()))?,
                coeffs: self.coeffs.clone(),
                grid: self.grid.clone(),
            }],
            (None, false) => Vec::new(),
        };
        let filters = specs.iter().map(FilterSpec::to_function).collect::<Result<Vec<_>>>()?;
        if let Some(a) = &dilation {
            if let Some(bad) = filters.iter().find(|g| g.dim() != a.dim()) {
                return Err(Error::DimensionMismatch { expected: a.dim(), got: bad.dim() });
            }
        }
        Ok(LoadedFilters { dilation, normalized: self.normalized, filters })
    }

    pub fn from_filters(dilation: Option<&DilationMatrix>, normalized: bool, filters: &[TorusFunction]) -> Self {
        let dilation = dilation.map(|a| DilationSpec::Nested(a.entries().to_rows()));
        if let [single] = filters {
            let spec = FilterSpec::from_function(single);
            return Self {
                dilation,
                normalized,
                n: Some(spec.n),
                representation: Some(spec.representation),
                coeffs: spec.coeffs,
                grid: spec.grid,
                filters: None,
            };
        }
        Self {
            dilation,
            normalized,
            filters: Some(filters.iter().map(FilterSpec::from_function).collect()),
            ..Self::default()
        }
    }
}

pub fn parse_filter_json(text: &str) -> Result<LoadedFilters> {
    let file: FilterFile = serde_json::from_str(text)?;
    file.load()
}

pub fn read_filter_file(path: &Path) -> Result<LoadedFilters> {
    parse_filter_json(&std::fs::read_to_string(path)?)
}

pub fn filter_file_json(
    dilation: Option<&DilationMatrix>,
    normalized: bool,
    filters: &[TorusFunction],
) -> Result<String> {
    super::to_json_pretty(&FilterFile::from_filters(dilation, normalized, filters))
}

pub fn write_filter_file(
    path: &Path,
    dilation: Option<&DilationMatrix>,
    normalized: bool,
    filters: &[TorusFunction],
) -> Result<()> {
    super::atomic_write(path, filter_file_json(dilation, normalized, filters)?.as_bytes())
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixFile {
    Wrapped { dilation: DilationSpec },
    Bare(DilationSpec),
}

/// A dilation matrix given bare or as `{"dilation": …}`.
pub fn parse_matrix_json(text: &str) -> Result<Vec<Vec<i64>>> {
    let parsed: MatrixFile = serde_json::from_str(text)?;
    match parsed {
        MatrixFile::Wrapped { dilation } | MatrixFile::Bare(dilation) => dilation.rows(),
    }
}

pub fn read_matrix_file(path: &Path) -> Result<Vec<Vec<i64>>> {
    parse_matrix_json(&std::fs::read_to_string(path)?)
}
