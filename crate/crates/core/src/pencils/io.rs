use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::AltPencil;
use crate::galois::{Field, Mat, Scalar};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// On-disk pencil: field description plus integer-encoded matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilFile {
    pub schema_version: u32,
    pub p: u64,
    pub k: u32,
    /// Monic modulus, low-to-high, for `k > 1`. When absent the default
    /// modulus for `p^k` is used.
    #[serde(default)]
    pub modulus: Option<Vec<u64>>,
    #[serde(rename = "dimV")]
    pub dim_v: usize,
    #[serde(rename = "dimW")]
    pub dim_w: usize,
    pub mats: Vec<Vec<Vec<u64>>>,
}

impl PencilFile {
    pub fn from_pencil(p: &AltPencil) -> PencilFile {
        let f = p.field();
        PencilFile {
            schema_version: SCHEMA_VERSION,
            p: f.characteristic() as u64,
            k: f.degree(),
            modulus: f.modulus().map(|m| m.iter().map(|&c| c as u64).collect()),
            dim_v: p.dim_v(),
            dim_w: p.dim_w(),
            mats: p
                .mats()
                .iter()
                .map(|m| {
                    (0..m.rows())
                        .map(|r| m.row(r).iter().map(|s| s.value() as u64).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn field(&self) -> Result<Field> {
        match (&self.modulus, self.k) {
            (_, 0) => Err(Error::Parse("k must be at least 1".into())),
            (None, 1) => Field::prime(self.p),
            (Some(m), _) => {
                let f = Field::extension(self.p, m)?;
                if f.degree() != self.k {
                    return Err(Error::Parse(format!(
                        "modulus has degree {}, k = {}",
                        f.degree(),
                        self.k
                    )));
                }
                Ok(f)
            }
            (None, k) => {
                let q = (self.p as u128)
                    .checked_pow(k)
                    .ok_or_else(|| Error::Parse("field too large".into()))?;
                Field::standard(q as u64).ok_or_else(|| {
                    Error::InvalidModulus(format!("no default modulus for q = {q}; supply one"))
                })
            }
        }
    }

    pub fn to_pencil(&self) -> Result<AltPencil> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema version {}",
                self.schema_version
            )));
        }
        let f = self.field()?;
        if self.mats.len() != self.dim_w {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for dimW = {}",
                self.mats.len(),
                self.dim_w
            )));
        }
        let mut mats = Vec::with_capacity(self.dim_w);
        for m in &self.mats {
            if m.len() != self.dim_v || m.iter().any(|r| r.len() != self.dim_v) {
                return Err(Error::DimensionMismatch(format!(
                    "matrices must be {0}x{0}",
                    self.dim_v
                )));
            }
            let rows: Vec<Vec<Scalar>> = m
                .iter()
                .map(|r| r.iter().map(|&x| f.scalar(x)).collect::<Result<Vec<_>>>())
                .collect::<Result<_>>()?;
            mats.push(if rows.is_empty() {
                Mat::zeros(0, 0)
            } else {
                Mat::from_rows(&rows)?
            });
        }
        AltPencil::new(&f, self.dim_v, mats)
    }

    pub fn from_json(s: &str) -> Result<PencilFile> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Stable layout: one matrix row per line, keys in a fixed order.
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        out.push_str("{\n");
        let _ = writeln!(out, "  \"schema_version\": {},", self.schema_version);
        let _ = writeln!(out, "  \"p\": {},", self.p);
        let _ = writeln!(out, "  \"k\": {},", self.k);
        match &self.modulus {
            None => out.push_str("  \"modulus\": null,\n"),
            Some(m) => {
                let _ = writeln!(out, "  \"modulus\": {},", int_list(m));
            }
        }
        let _ = writeln!(out, "  \"dimV\": {},", self.dim_v);
        let _ = writeln!(out, "  \"dimW\": {},", self.dim_w);
        out.push_str("  \"mats\": [");
        for (i, m) in self.mats.iter().enumerate() {
            out.push_str(if i == 0 { "\n    [" } else { ",\n    [" });
            for (r, row) in m.iter().enumerate() {
                if r > 0 {
                    out.push_str(",\n     ");
                }
                out.push_str(&int_list(row));
            }
            out.push(']');
        }
        out.push_str(if self.mats.is_empty() {
            "]\n}\n"
        } else {
            "\n  ]\n}\n"
        });
        out
    }
}

fn int_list(v: &[u64]) -> String {
    let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", items.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let f = Field::standard(9).unwrap();
        let m = Mat::from_rows(&[
            vec![Scalar(0), Scalar(4)],
            vec![f.neg(Scalar(4)), Scalar(0)],
        ])
        .unwrap();
        let p = AltPencil::new(&f, 2, vec![m.clone(), m.scale(&f, Scalar(3))]).unwrap();
        let file = PencilFile::from_pencil(&p);
        let text = file.to_json();
        let back = PencilFile::from_json(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_pencil().unwrap(), p);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn rejects_bad_files() {
        let bad = r#"{"schema_version":1,"p":5,"k":1,"dimV":2,"dimW":1,"mats":[[[0,1],[1,0]]]}"#;
        assert!(matches!(
            PencilFile::from_json(bad).unwrap().to_pencil(),
            Err(Error::NotAlternating(_))
        ));
        let big = r#"{"schema_version":1,"p":5,"k":1,"dimV":2,"dimW":1,"mats":[[[0,7],[3,0]]]}"#;
        assert!(PencilFile::from_json(big).unwrap().to_pencil().is_err());
        assert!(PencilFile::from_json("{").is_err());
    }
}
