//! Versioned JSON files for foldings, loops, folded polylines, and stick
//! diagrams. Writes go through a temporary file and a rename, so readers
//! never observe a half-written artifact.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::construct::{CrossingOverride, StickDiagram};
use crate::error::{Error, Result};
use crate::folding::{CreasePattern, Folding, PaperLoop, SpatialPolyline};
use crate::geometry::{v2, v3, RigidEmbedding};

pub const FORMAT: &str = "orikami/1";

#[derive(Serialize, Deserialize)]
struct FoldingFile {
    format: String,
    vertices: Vec<[f64; 2]>,
    creases: Vec<[usize; 2]>,
    faces: Vec<Vec<usize>>,
    face_maps: Vec<MapFile>,
}

#[derive(Serialize, Deserialize)]
struct MapFile {
    /// Rows of the 3×2 linear part: image of (1,0) in the first column,
    /// image of (0,1) in the second.
    linear: [[f64; 2]; 3],
    translation: [f64; 3],
}

#[derive(Serialize, Deserialize)]
struct LoopFile {
    format: String,
    waypoints: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct PolylineFile {
    format: String,
    waypoints: Vec<[f64; 3]>,
    injective: bool,
}

#[derive(Serialize, Deserialize)]
struct SticksFile {
    format: String,
    vertices: Vec<[f64; 2]>,
    crossings: Vec<CrossingFile>,
}

#[derive(Serialize, Deserialize)]
struct CrossingFile {
    edges: [usize; 2],
    over: usize,
}

fn read_file<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn check_format(path: &Path, found: &str) -> Result<()> {
    if found != FORMAT {
        return Err(Error::Format(format!(
            "{}: key \"format\" is {found:?}, expected {FORMAT:?}",
            path.display()
        )));
    }
    Ok(())
}

/// Serialize `value` as pretty JSON and move it into place atomically.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty());
    let mut tmp = tempfile::NamedTempFile::new_in(dir.unwrap_or_else(|| Path::new(".")))?;
    use std::io::Write;
    tmp.write_all(text.as_bytes())?;
    tmp.write_all(b"\n")?;
    tmp.persist(path)
        .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    Ok(())
}

pub fn write_folding(path: &Path, f: &Folding<f64>) -> Result<()> {
    let file = FoldingFile {
        format: FORMAT.into(),
        vertices: f.pattern.vertices.iter().map(|p| [p.x, p.y]).collect(),
        creases: f.pattern.creases.iter().map(|&(a, b)| [a, b]).collect(),
        faces: f.pattern.faces.clone(),
        face_maps: f
            .face_maps
            .iter()
            .map(|m| MapFile {
                linear: [
                    [m.cols[0].x, m.cols[1].x],
                    [m.cols[0].y, m.cols[1].y],
                    [m.cols[0].z, m.cols[1].z],
                ],
                translation: [m.translation.x, m.translation.y, m.translation.z],
            })
            .collect(),
    };
    write_json(path, &file)
}

pub fn read_folding(path: &Path) -> Result<Folding<f64>> {
    let file: FoldingFile = read_file(path)?;
    check_format(path, &file.format)?;
    let nv = file.vertices.len();
    for (i, c) in file.creases.iter().enumerate() {
        if c[0] >= nv || c[1] >= nv {
            return Err(Error::Format(format!(
                "{}: key \"creases\"[{i}] names a vertex out of range",
                path.display()
            )));
        }
    }
    for (i, face) in file.faces.iter().enumerate() {
        if face.len() < 3 || face.iter().any(|&k| k >= nv) {
            return Err(Error::Format(format!(
                "{}: key \"faces\"[{i}] is not a cycle of known vertices",
                path.display()
            )));
        }
    }
    if file.face_maps.len() != file.faces.len() {
        return Err(Error::Format(format!(
            "{}: key \"face_maps\" has {} entries for {} faces",
            path.display(),
            file.face_maps.len(),
            file.faces.len()
        )));
    }
    Ok(Folding {
        pattern: CreasePattern {
            vertices: file.vertices.iter().map(|p| v2(p[0], p[1])).collect(),
            creases: file.creases.iter().map(|c| (c[0], c[1])).collect(),
            faces: file.faces,
        },
        face_maps: file
            .face_maps
            .iter()
            .map(|m| RigidEmbedding {
                cols: [
                    v3(m.linear[0][0], m.linear[1][0], m.linear[2][0]),
                    v3(m.linear[0][1], m.linear[1][1], m.linear[2][1]),
                ],
                translation: v3(m.translation[0], m.translation[1], m.translation[2]),
            })
            .collect(),
    })
}

pub fn write_loop(path: &Path, lp: &PaperLoop<f64>) -> Result<()> {
    let file = LoopFile {
        format: FORMAT.into(),
        waypoints: lp.waypoints.iter().map(|p| [p.x, p.y]).collect(),
    };
    write_json(path, &file)
}

pub fn read_loop(path: &Path) -> Result<PaperLoop<f64>> {
    let file: LoopFile = read_file(path)?;
    check_format(path, &file.format)?;
    Ok(PaperLoop::new(
        file.waypoints.iter().map(|p| v2(p[0], p[1])).collect(),
    ))
}

pub fn write_polyline(path: &Path, pl: &SpatialPolyline<f64>) -> Result<()> {
    let file = PolylineFile {
        format: FORMAT.into(),
        waypoints: pl.waypoints.iter().map(|p| [p.x, p.y, p.z]).collect(),
        injective: pl.injective,
    };
    write_json(path, &file)
}

pub fn read_polyline(path: &Path) -> Result<SpatialPolyline<f64>> {
    let file: PolylineFile = read_file(path)?;
    check_format(path, &file.format)?;
    Ok(SpatialPolyline {
        waypoints: file.waypoints.iter().map(|p| v3(p[0], p[1], p[2])).collect(),
        injective: file.injective,
    })
}

pub fn write_sticks(path: &Path, s: &StickDiagram<f64>) -> Result<()> {
    let file = SticksFile {
        format: FORMAT.into(),
        vertices: s.vertices.iter().map(|p| [p.x, p.y]).collect(),
        crossings: s
            .crossing_overrides
            .iter()
            .map(|c| CrossingFile { edges: [c.edges.0, c.edges.1], over: c.over })
            .collect(),
    };
    write_json(path, &file)
}

pub fn read_sticks(path: &Path) -> Result<StickDiagram<f64>> {
    let file: SticksFile = read_file(path)?;
    check_format(path, &file.format)?;
    let ne = file.vertices.len();
    for (i, c) in file.crossings.iter().enumerate() {
        if c.edges[0] >= ne || c.edges[1] >= ne {
            return Err(Error::Format(format!(
                "{}: key \"crossings\"[{i}].edges names an edge out of range",
                path.display()
            )));
        }
    }
    Ok(StickDiagram::new(
        file.vertices.iter().map(|p| v2(p[0], p[1])).collect(),
        file.crossings
            .iter()
            .map(|c| CrossingOverride { edges: (c.edges[0], c.edges[1]), over: c.over })
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::torus_folding;
    use crate::num::Tolerance;

    #[test]
    fn folding_files_round_trip_byte_for_byte() {
        let tol = Tolerance::default();
        let (f, lp) = torus_folding(&crate::generators::TorusParams::new(1), &tol).unwrap();
        let dir = tempfile::tempdir().unwrap();

        let fp = dir.path().join("folding.json");
        write_folding(&fp, &f).unwrap();
        let f2 = read_folding(&fp).unwrap();
        let fp2 = dir.path().join("folding2.json");
        write_folding(&fp2, &f2).unwrap();
        assert_eq!(fs::read(&fp).unwrap(), fs::read(&fp2).unwrap());
        assert_eq!(f.pattern, f2.pattern);
        assert_eq!(f.face_maps, f2.face_maps);

        let lpp = dir.path().join("loop.json");
        write_loop(&lpp, &lp).unwrap();
        assert_eq!(read_loop(&lpp).unwrap().waypoints, lp.waypoints);
    }

    #[test]
    fn stick_files_round_trip() {
        let s = StickDiagram::new(
            vec![v2(0.0, 1.0), v2(-0.6, -0.8), v2(0.9, 0.3)],
            vec![CrossingOverride { edges: (0, 2), over: 2 }],
        );
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("sticks.json");
        write_sticks(&p, &s).unwrap();
        assert_eq!(read_sticks(&p).unwrap(), s);
    }

    #[test]
    fn malformed_files_name_the_trouble() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.json");

        fs::write(&p, r#"{"format": "orikami/9", "waypoints": []}"#).unwrap();
        let err = read_loop(&p).unwrap_err().to_string();
        assert!(err.contains("format"), "unexpected error: {err}");

        fs::write(&p, r#"{"format": "orikami/1"}"#).unwrap();
        let err = read_loop(&p).unwrap_err().to_string();
        assert!(err.contains("waypoints"), "unexpected error: {err}");

        fs::write(
            &p,
            r#"{"format": "orikami/1", "vertices": [[0,0],[1,0],[0,1]],
               "creases": [[0,7]], "faces": [[0,1,2]],
               "face_maps": [{"linear": [[1,0],[0,1],[0,0]], "translation": [0,0,0]}]}"#,
        )
        .unwrap();
        let err = read_folding(&p).unwrap_err().to_string();
        assert!(err.contains("creases"), "unexpected error: {err}");
    }
}
