//! JSON file formats for hypergraphs, multiplexes, weighted hypergraphs and
//! graphs.
//!
//! ```text
//! hypergraph  {"uniformity": r, "num_vertices": n, "edges": [[v, ...], ...]}
//! multiplex   {"num_vertices": n, "layers": [<hypergraph>, ...]}
//! weighted    <hypergraph> + "weights": [w, ...] (+ optional "bound": K)
//! graph       {"num_vertices": n, "edges": [[u, v], ...]}
//! ```
//!
//! Readers report the file, the JSON position or the offending entry.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::constructions::{GraphFile, SimpleGraph};
use crate::error::{Error, Result};
use crate::hypergraph::{Multiplex, UniformHypergraph, VertexId, WeightedUniformHypergraph};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypergraphFile {
    pub uniformity: usize,
    pub num_vertices: usize,
    pub edges: Vec<Vec<VertexId>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiplexFile {
    pub num_vertices: usize,
    pub layers: Vec<HypergraphFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightedFile {
    pub uniformity: usize,
    pub num_vertices: usize,
    pub edges: Vec<Vec<VertexId>>,
    pub weights: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u32>,
}

impl From<&UniformHypergraph> for HypergraphFile {
    fn from(h: &UniformHypergraph) -> Self {
        HypergraphFile {
            uniformity: h.uniformity(),
            num_vertices: h.num_vertices(),
            edges: h.edge_lists(),
        }
    }
}

impl From<&Multiplex> for MultiplexFile {
    fn from(m: &Multiplex) -> Self {
        MultiplexFile {
            num_vertices: m.num_vertices(),
            layers: m.layers().iter().map(HypergraphFile::from).collect(),
        }
    }
}

impl From<&WeightedUniformHypergraph> for WeightedFile {
    fn from(w: &WeightedUniformHypergraph) -> Self {
        WeightedFile {
            uniformity: w.base().uniformity(),
            num_vertices: w.base().num_vertices(),
            edges: w.base().edge_lists(),
            weights: w.weights().to_vec(),
            bound: Some(w.bound()),
        }
    }
}

impl HypergraphFile {
    pub fn build(self) -> Result<UniformHypergraph> {
        UniformHypergraph::new(self.uniformity, self.num_vertices, self.edges)
    }
}

impl MultiplexFile {
    pub fn build(self) -> Result<Multiplex> {
        let n = self.num_vertices;
        let layers = self
            .layers
            .into_iter()
            .enumerate()
            .map(|(i, l)| {
                if l.num_vertices != n {
                    return Err(Error::invalid(format!(
                        "layers[{i}]: num_vertices {} differs from {n}",
                        l.num_vertices
                    )));
                }
                l.build()
                    .map_err(|e| Error::invalid(format!("layers[{i}]: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Multiplex::new(layers)
    }
}

impl WeightedFile {
    pub fn build(self) -> Result<WeightedUniformHypergraph> {
        if self.weights.len() != self.edges.len() {
            return Err(Error::WeightCount {
                weights: self.weights.len(),
                edges: self.edges.len(),
            });
        }
        if let Some((i, &w)) = self.weights.iter().enumerate().find(|(_, &w)| w == 0) {
            return Err(Error::WeightOutOfRange {
                edge: i,
                weight: w,
                bound: self.bound.unwrap_or(u32::MAX),
            });
        }
        let pairs = self.edges.into_iter().zip(self.weights).collect();
        let w = WeightedUniformHypergraph::from_pairs(self.uniformity, self.num_vertices, pairs)?;
        match self.bound {
            Some(k) => {
                let (base, weights) = (w.base().clone(), w.weights().to_vec());
                WeightedUniformHypergraph::new(base, weights, k)
            }
            None => Ok(w),
        }
    }
}

/// Any of the hypergraph-like documents, recognised by its keys.
#[derive(Clone, Debug)]
pub enum Document {
    Hypergraph(UniformHypergraph),
    Multiplex(Multiplex),
    Weighted(WeightedUniformHypergraph),
}

fn positioned(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Format {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

fn read_value(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| positioned(path, e))
}

fn parse<T: for<'de> Deserialize<'de>>(path: &Path, v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| positioned(path, e))
}

pub fn parse_document(v: Value) -> Result<Document> {
    let kind = |k: &str| v.get(k).is_some();
    Ok(if kind("layers") {
        Document::Multiplex(serde_json::from_value::<MultiplexFile>(v)?.build()?)
    } else if kind("weights") {
        Document::Weighted(serde_json::from_value::<WeightedFile>(v)?.build()?)
    } else {
        Document::Hypergraph(serde_json::from_value::<HypergraphFile>(v)?.build()?)
    })
}

pub fn read_document(path: impl AsRef<Path>) -> Result<Document> {
    let path = path.as_ref();
    parse_document(read_value(path)?).map_err(|e| match e {
        Error::Io(_) => e,
        other => positioned(path, other),
    })
}

pub fn read_hypergraph(path: impl AsRef<Path>) -> Result<UniformHypergraph> {
    let path = path.as_ref();
    let file: HypergraphFile = parse(path, read_value(path)?)?;
    file.build().map_err(|e| positioned(path, e))
}

pub fn read_multiplex(path: impl AsRef<Path>) -> Result<Multiplex> {
    let path = path.as_ref();
    let v = read_value(path)?;
    if v.get("layers").is_none() {
        // a bare hypergraph is a one-layer multiplex
        let file: HypergraphFile = parse(path, v)?;
        return Ok(Multiplex::single(
            file.build().map_err(|e| positioned(path, e))?,
        ));
    }
    let file: MultiplexFile = parse(path, v)?;
    file.build().map_err(|e| positioned(path, e))
}

pub fn read_weighted(path: impl AsRef<Path>) -> Result<WeightedUniformHypergraph> {
    let path = path.as_ref();
    let file: WeightedFile = parse(path, read_value(path)?)?;
    file.build().map_err(|e| positioned(path, e))
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<SimpleGraph> {
    let path = path.as_ref();
    let file: GraphFile = parse(path, read_value(path)?)?;
    SimpleGraph::try_from(file).map_err(|e| positioned(path, e))
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

pub fn hypergraph_json(h: &UniformHypergraph) -> Result<String> {
    to_json(&HypergraphFile::from(h))
}

pub fn multiplex_json(m: &Multiplex) -> Result<String> {
    to_json(&MultiplexFile::from(m))
}

pub fn weighted_json(w: &WeightedUniformHypergraph) -> Result<String> {
    to_json(&WeightedFile::from(w))
}

pub fn write_string(path: impl AsRef<Path>, contents: &str) -> Result<()> {
    let path = path.as_ref();
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, contents)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
        let p = dir.join(name);
        fs::write(&p, text).unwrap();
        p
    }

    #[test]
    fn round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let h = UniformHypergraph::new(3, 5, vec![vec![2, 0, 1], vec![0, 1, 3]]).unwrap();
        let p = write(dir.path(), "h.json", &hypergraph_json(&h).unwrap());
        assert_eq!(read_hypergraph(&p).unwrap(), h);

        let m = Multiplex::new(vec![
            h.clone(),
            UniformHypergraph::new(2, 5, vec![vec![3, 4]]).unwrap(),
        ])
        .unwrap();
        let p = write(dir.path(), "m.json", &multiplex_json(&m).unwrap());
        assert_eq!(read_multiplex(&p).unwrap(), m);
        assert!(matches!(read_document(&p).unwrap(), Document::Multiplex(_)));

        let w = WeightedUniformHypergraph::new(h, vec![2, 1], 3).unwrap();
        let p = write(dir.path(), "w.json", &weighted_json(&w).unwrap());
        assert_eq!(read_weighted(&p).unwrap(), w);
    }

    #[test]
    fn weights_follow_listed_edges() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(
            dir.path(),
            "w.json",
            r#"{"uniformity":2,"num_vertices":3,"edges":[[1,2],[0,1]],"weights":[5,1]}"#,
        );
        let w = read_weighted(&p).unwrap();
        assert_eq!(w.weights(), &[1, 5]);
        assert_eq!(w.bound(), 5);
    }

    #[test]
    fn errors_carry_positions() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(
            dir.path(),
            "bad.json",
            r#"{"uniformity":3,"num_vertices":4,"edges":[[0,1,2],[0,1,1]]}"#,
        );
        let msg = read_hypergraph(&p).unwrap_err().to_string();
        assert!(msg.contains("bad.json") && msg.contains("edge 1"), "{msg}");

        let p = write(
            dir.path(),
            "syntax.json",
            "{\"uniformity\": 3,\n \"edges\": [[0,1,2]",
        );
        let msg = read_hypergraph(&p).unwrap_err().to_string();
        assert!(msg.contains("line 2"), "{msg}");

        let p = write(
            dir.path(),
            "layers.json",
            r#"{"num_vertices":4,"layers":[{"uniformity":2,"num_vertices":4,"edges":[[0,1]]},{"uniformity":2,"num_vertices":4,"edges":[[0,9]]}]}"#,
        );
        let msg = read_multiplex(&p).unwrap_err().to_string();
        assert!(
            msg.contains("layers[1]") && msg.contains("vertex 9"),
            "{msg}"
        );

        let p = write(
            dir.path(),
            "extra.json",
            r#"{"uniformity":2,"num_vertices":3,"edges":[],"colour":1}"#,
        );
        assert!(read_hypergraph(&p).is_err());

        let p = write(
            dir.path(),
            "g.json",
            r#"{"num_vertices":3,"edges":[[0,1],[1,1]]}"#,
        );
        let msg = read_graph(&p).unwrap_err().to_string();
        assert!(msg.contains("edge 1"), "{msg}");
    }
}
