//! Tabulated polygons and strand data, embedded at compile time or read from
//! the directory named by `PENROSE_DATA`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::DataError;
use crate::graph::LatticePoint;
use crate::polygon::GoldenPolygon;
use crate::torus4::{parse_maps, ExtensionMap};

pub const PARTITION_FILE: &str = "partition26.dat";
pub const DYNPOLY_FILE: &str = "dynpoly75.dat";
pub const GENE_CENTERS_FILE: &str = "gene_centers.dat";
pub const SHADOW_FILE: &str = "shadow_triples.dat";
pub const EXTMAPS_FILE: &str = "extmaps.dat";
pub const MANIFEST_FILE: &str = "MANIFEST";

pub const DATA_FILES: [&str; 5] = [PARTITION_FILE, DYNPOLY_FILE, GENE_CENTERS_FILE, SHADOW_FILE, EXTMAPS_FILE];

const EMBEDDED: [(&str, &str); 6] = [
    (PARTITION_FILE, include_str!("../data/partition26.dat")),
    (DYNPOLY_FILE, include_str!("../data/dynpoly75.dat")),
    (GENE_CENTERS_FILE, include_str!("../data/gene_centers.dat")),
    (SHADOW_FILE, include_str!("../data/shadow_triples.dat")),
    (EXTMAPS_FILE, include_str!("../data/extmaps.dat")),
    (MANIFEST_FILE, include_str!("../data/MANIFEST")),
];

/// Endpoints and middle point of a shadow strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShadowTriple {
    pub start: LatticePoint,
    pub middle: LatticePoint,
    pub end: LatticePoint,
}

#[derive(Clone, Debug)]
pub struct DataSet {
    /// `partition[k - 1]` is polygon `k`.
    pub partition: Vec<GoldenPolygon>,
    pub dynamical: Vec<GoldenPolygon>,
    pub gene_centers: Vec<LatticePoint>,
    pub shadows: Vec<ShadowTriple>,
    pub extmaps: Vec<ExtensionMap>,
    pub source: String,
}

impl DataSet {
    pub fn embedded() -> DataSet {
        let files: BTreeMap<&str, String> = EMBEDDED.iter().map(|(n, t)| (*n, t.to_string())).collect();
        DataSet::from_texts(&files, "embedded").expect("embedded data is valid")
    }

    /// Data from `PENROSE_DATA` when set, otherwise the embedded copy.
    pub fn from_env() -> Result<DataSet, DataError> {
        match std::env::var_os("PENROSE_DATA") {
            Some(dir) => DataSet::load_dir(Path::new(&dir)),
            None => Ok(DataSet::embedded()),
        }
    }

    pub fn load_dir(dir: &Path) -> Result<DataSet, DataError> {
        let mut files = BTreeMap::new();
        for name in DATA_FILES.iter().chain(std::iter::once(&MANIFEST_FILE)) {
            let path: PathBuf = dir.join(name);
            let text = std::fs::read_to_string(&path)
                .map_err(|source| DataError::Io { file: path.display().to_string(), source })?;
            files.insert(*name, text);
        }
        DataSet::from_texts(&files, &dir.display().to_string())
    }

    fn from_texts(files: &BTreeMap<&str, String>, source: &str) -> Result<DataSet, DataError> {
        verify_manifest(files)?;
        Ok(DataSet {
            partition: parse_polygons(&files[PARTITION_FILE], PARTITION_FILE, 26, 1)?,
            dynamical: parse_polygons(&files[DYNPOLY_FILE], DYNPOLY_FILE, 75, 0)?,
            gene_centers: parse_centers(&files[GENE_CENTERS_FILE], 75)?,
            shadows: parse_shadows(&files[SHADOW_FILE], 75)?,
            extmaps: parse_maps(&files[EXTMAPS_FILE])?,
            source: source.to_string(),
        })
    }

    pub fn partition_polygon(&self, k: usize) -> &GoldenPolygon {
        &self.partition[k - 1]
    }
}

pub fn sha256_hex(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn verify_manifest(files: &BTreeMap<&str, String>) -> Result<(), DataError> {
    let manifest = &files[MANIFEST_FILE];
    let mut seen = 0;
    for line in data_lines(manifest) {
        let mut it = line.split_whitespace();
        let (Some(hash), Some(name)) = (it.next(), it.next()) else {
            return Err(malformed(MANIFEST_FILE, line));
        };
        let Some(text) = files.get(name) else {
            return Err(malformed(MANIFEST_FILE, line));
        };
        if sha256_hex(text) != hash {
            return Err(DataError::Checksum { file: name.to_string() });
        }
        seen += 1;
    }
    if seen != DATA_FILES.len() {
        return Err(DataError::Count { file: MANIFEST_FILE.into(), expected: DATA_FILES.len(), found: seen });
    }
    Ok(())
}

fn malformed(file: &str, msg: &str) -> DataError {
    DataError::Malformed { file: file.to_string(), msg: msg.to_string() }
}

fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn ints(line: &str, file: &str) -> Result<Vec<i64>, DataError> {
    line.split_whitespace().map(|t| t.parse::<i64>().map_err(|_| malformed(file, line))).collect()
}

/// Blocks of `<index> <n>` followed by `n` rows `a0 a1 a2 a3`.
pub fn parse_polygons(text: &str, file: &str, expected: usize, first: i64) -> Result<Vec<GoldenPolygon>, DataError> {
    let mut lines = data_lines(text);
    let mut out = Vec::new();
    while let Some(header) = lines.next() {
        let h = ints(header, file)?;
        if h.len() != 2 || h[0] != first + out.len() as i64 || h[1] < 3 {
            return Err(malformed(file, header));
        }
        let mut rows = Vec::new();
        for _ in 0..h[1] {
            let line = lines.next().ok_or_else(|| malformed(file, "truncated polygon"))?;
            let r = ints(line, file)?;
            if r.len() != 4 {
                return Err(malformed(file, line));
            }
            rows.push([r[0], r[1], r[2], r[3]]);
        }
        out.push(GoldenPolygon::from_rows(&rows));
    }
    if out.len() != expected {
        return Err(DataError::Count { file: file.into(), expected, found: out.len() });
    }
    Ok(out)
}

fn parse_centers(text: &str, expected: usize) -> Result<Vec<LatticePoint>, DataError> {
    let mut out = Vec::new();
    for line in data_lines(text) {
        let r = ints(line, GENE_CENTERS_FILE)?;
        if r.len() != 3 || r[0] != out.len() as i64 {
            return Err(malformed(GENE_CENTERS_FILE, line));
        }
        out.push(LatticePoint::new(r[1], r[2]));
    }
    if out.len() != expected {
        return Err(DataError::Count { file: GENE_CENTERS_FILE.into(), expected, found: out.len() });
    }
    Ok(out)
}

fn parse_shadows(text: &str, expected: usize) -> Result<Vec<ShadowTriple>, DataError> {
    let mut out = Vec::new();
    for line in data_lines(text) {
        let r = ints(line, SHADOW_FILE)?;
        if r.len() != 7 || r[0] != out.len() as i64 {
            return Err(malformed(SHADOW_FILE, line));
        }
        out.push(ShadowTriple {
            start: LatticePoint::new(r[1], r[2]),
            middle: LatticePoint::new(r[3], r[4]),
            end: LatticePoint::new(r[5], r[6]),
        });
    }
    if out.len() != expected {
        return Err(DataError::Count { file: SHADOW_FILE.into(), expected, found: out.len() });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_counts() {
        let d = DataSet::embedded();
        assert_eq!(d.partition.len(), 26);
        assert_eq!(d.dynamical.len(), 75);
        assert_eq!(d.gene_centers[0], LatticePoint::new(3, 4));
        assert_eq!(d.shadows[0].middle, LatticePoint::new(11, 17));
        assert!(d.partition.iter().all(|p| p.is_convex()));
    }

    #[test]
    fn tabulated_extensions_match_the_strip_maps() {
        let d = DataSet::embedded();
        let derived = crate::torus4::extension_maps(&crate::kite::strip_maps());
        assert_eq!(d.extmaps, derived.to_vec());
    }

    #[test]
    fn short_file_is_rejected() {
        let text = "1 3\n0 0 0 0\n2 0 0 0\n0 0 2 0\n";
        let err = parse_polygons(text, "x.dat", 26, 1).unwrap_err();
        assert!(matches!(err, DataError::Count { expected: 26, found: 1, .. }));
        assert!(parse_polygons("1 3\n0 0 0\n", "x.dat", 1, 1).is_err());
    }
}
