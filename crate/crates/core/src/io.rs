//! File formats: the facet-list text format, its JSON twin, graph files and
//! starring-trace files. Imports validate strictly and report line numbers.
//!
//! Facet-list text: header `dim <d> vertices <n>`, then one facet per line as
//! space-separated increasing labels. JSON: `{"dim": d, "facets": [[...]]}`.
//! Graph: header `nodes <n>`, then one edge `u v` per line. Trace: one step
//! per line, the facet's increasing labels followed by the new vertex.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::build::StarringTrace;
use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::graph::Graph;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Serializes to the facet-list text format, facets in lexicographic order.
pub fn complex_to_text(k: &SimplicialComplex) -> String {
    let mut out = format!("dim {} vertices {}\n", k.dim(), k.num_vertices());
    for f in k.facets() {
        let labels: Vec<String> = f.vertices().iter().map(|v| v.to_string()).collect();
        out.push_str(&labels.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the facet-list text format, validating the header against the body.
pub fn complex_from_text(text: &str) -> Result<SimplicialComplex> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (dim, vertices) = match fields.as_slice() {
        ["dim", d, "vertices", n] => {
            let d: usize = d.parse().map_err(|_| parse_err(1, "bad dim"))?;
            let n: usize = n.parse().map_err(|_| parse_err(1, "bad vertex count"))?;
            (d, n)
        }
        _ => return Err(parse_err(1, "expected header `dim <d> vertices <n>`")),
    };
    let mut facets = Vec::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut labels = Vec::new();
        for tok in line.split_whitespace() {
            let v: Vertex =
                tok.parse().map_err(|_| parse_err(lineno, format!("bad vertex label `{tok}`")))?;
            labels.push(v);
        }
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(parse_err(lineno, "facet labels must be strictly increasing"));
        }
        facets.push((lineno, Simplex::new(labels)));
    }
    if facets.is_empty() {
        return Err(parse_err(1, "no facets"));
    }
    for (lineno, f) in &facets {
        if f.dim() > dim {
            return Err(parse_err(*lineno, format!("facet of dimension {} exceeds header dim {dim}", f.dim())));
        }
    }
    let k = SimplicialComplex::from_facets(facets.into_iter().map(|(_, f)| f).collect::<Vec<_>>())?;
    if k.dim() != dim {
        return Err(parse_err(1, format!("header dim {dim} but facets give {}", k.dim())));
    }
    if k.num_vertices() != vertices {
        return Err(parse_err(1, format!("header vertices {vertices} but facets give {}", k.num_vertices())));
    }
    Ok(k)
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    dim: usize,
    facets: Vec<Vec<Vertex>>,
}

pub fn complex_to_json(k: &SimplicialComplex) -> String {
    let j = ComplexJson {
        dim: k.dim(),
        facets: k.facets().map(|f| f.vertices().to_vec()).collect(),
    };
    serde_json::to_string_pretty(&j).expect("complex serializes")
}

pub fn complex_from_json(text: &str) -> Result<SimplicialComplex> {
    let j: ComplexJson =
        serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
    for f in &j.facets {
        if f.windows(2).any(|w| w[0] >= w[1]) {
            return Err(parse_err(1, "facet labels must be strictly increasing"));
        }
    }
    let k = SimplicialComplex::from_facets(
        j.facets.into_iter().map(Simplex::new).collect::<Vec<_>>(),
    )?;
    if k.dim() != j.dim {
        return Err(parse_err(1, format!("declared dim {} but facets give {}", j.dim, k.dim())));
    }
    Ok(k)
}

/// Reads a complex from disk, JSON when the extension is `.json`, the text
/// format otherwise.
pub fn import_complex(path: impl AsRef<Path>) -> Result<SimplicialComplex> {
    let path = path.as_ref();
    let text = read(path)?;
    if path.extension().is_some_and(|e| e == "json") {
        complex_from_json(&text)
    } else {
        complex_from_text(&text)
    }
}

/// Writes a complex to disk in the format selected by the extension.
pub fn export_complex(k: &SimplicialComplex, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let text = if path.extension().is_some_and(|e| e == "json") {
        complex_to_json(k)
    } else {
        complex_to_text(k)
    };
    write(path, &text)
}

pub fn graph_to_text(g: &Graph<Vertex>) -> String {
    let mut out = format!("nodes {}\n", g.num_nodes());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn graph_from_text(text: &str) -> Result<Graph<Vertex>> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let n: usize = match fields.as_slice() {
        ["nodes", n] => n.parse().map_err(|_| parse_err(1, "bad node count"))?,
        _ => return Err(parse_err(1, "expected header `nodes <n>`")),
    };
    let mut g = Graph::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [u, v] = toks.as_slice() else {
            return Err(parse_err(lineno, "expected `u v`"));
        };
        let u: Vertex = u.parse().map_err(|_| parse_err(lineno, "bad node label"))?;
        let v: Vertex = v.parse().map_err(|_| parse_err(lineno, "bad node label"))?;
        if u == v {
            return Err(parse_err(lineno, "loops are not allowed"));
        }
        g.add_edge(u, v);
    }
    // Isolated nodes are implied by the header count using labels 1..n not
    // seen among the edges; reject if the edges already exceed the count.
    if g.num_nodes() > n {
        return Err(parse_err(1, format!("header nodes {n} but edges mention {}", g.num_nodes())));
    }
    let mut next: Vertex = 1;
    while g.num_nodes() < n {
        if !g.has_node(&next) {
            g.add_node(next);
        }
        next += 1;
    }
    Ok(g)
}

pub fn import_graph(path: impl AsRef<Path>) -> Result<Graph<Vertex>> {
    graph_from_text(&read(path.as_ref())?)
}

pub fn export_graph(g: &Graph<Vertex>, path: impl AsRef<Path>) -> Result<()> {
    write(path.as_ref(), &graph_to_text(g))
}

/// One starring step per line: the facet's increasing labels, then the new
/// vertex.
pub fn trace_to_text(t: &StarringTrace) -> String {
    let mut out = String::new();
    for (facet, v) in &t.steps {
        let labels: Vec<String> = facet.vertices().iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("{} {v}\n", labels.join(" ")));
    }
    out
}

pub fn trace_from_text(text: &str) -> Result<StarringTrace> {
    let mut steps = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() < 3 {
            return Err(parse_err(lineno, "expected facet labels then a new vertex"));
        }
        let mut labels = Vec::new();
        for tok in &toks {
            labels.push(
                tok.parse::<Vertex>()
                    .map_err(|_| parse_err(lineno, format!("bad label `{tok}`")))?,
            );
        }
        let v = labels.pop().unwrap();
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(parse_err(lineno, "facet labels must be strictly increasing"));
        }
        steps.push((Simplex::new(labels), v));
    }
    Ok(StarringTrace { steps })
}

pub fn import_trace(path: impl AsRef<Path>) -> Result<StarringTrace> {
    trace_from_text(&read(path.as_ref())?)
}

pub fn export_trace(t: &StarringTrace, path: impl AsRef<Path>) -> Result<()> {
    write(path.as_ref(), &trace_to_text(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{kuhnel, standard_sphere};

    #[test]
    fn text_round_trip() {
        for k in [standard_sphere(3), kuhnel(3).unwrap(), kuhnel(2).unwrap()] {
            let text = complex_to_text(&k);
            let back = complex_from_text(&text).unwrap();
            assert_eq!(back, k);
            assert_eq!(complex_to_text(&back), text);
        }
    }

    #[test]
    fn json_round_trip() {
        for k in [standard_sphere(2), kuhnel(2).unwrap()] {
            let back = complex_from_json(&complex_to_json(&k)).unwrap();
            assert_eq!(back, k);
        }
    }

    #[test]
    fn text_rejects_bad_input() {
        let bad = |s: &str| complex_from_text(s).unwrap_err();
        assert!(matches!(bad(""), Error::Parse { line: 1, .. }));
        assert!(matches!(bad("dim 2 vertices 4\n"), Error::Parse { line: 1, .. }));
        assert!(matches!(bad("hello\n1 2 3\n"), Error::Parse { line: 1, .. }));
        assert!(matches!(bad("dim 2 vertices 4\n1 2 3\n3 2 4\n"), Error::Parse { line: 3, .. }));
        assert!(matches!(bad("dim 2 vertices 4\n1 2 x\n"), Error::Parse { line: 2, .. }));
        // Header contradicting the body.
        assert!(matches!(bad("dim 3 vertices 4\n1 2 3\n1 2 4\n1 3 4\n2 3 4\n"), Error::Parse { line: 1, .. }));
        assert!(matches!(bad("dim 2 vertices 9\n1 2 3\n1 2 4\n1 3 4\n2 3 4\n"), Error::Parse { line: 1, .. }));
    }

    #[test]
    fn graph_round_trip_with_isolated_nodes() {
        let k = standard_sphere(2);
        let g = k.edge_graph();
        let back = graph_from_text(&graph_to_text(&g)).unwrap();
        assert_eq!(back, g);

        let lonely = graph_from_text("nodes 3\n1 2\n").unwrap();
        assert_eq!(lonely.num_nodes(), 3);
        assert_eq!(lonely.num_edges(), 1);
        assert!(lonely.has_node(&3));
    }

    #[test]
    fn graph_rejects_bad_input() {
        assert!(matches!(graph_from_text("nodes 2\n1 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(graph_from_text("nodes 2\n1 2 3\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(graph_from_text("nodes 1\n1 2\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn trace_round_trip() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let s = crate::build::random_stacked_sphere(2, 9, &mut rng).unwrap();
        let report = crate::recognize::is_stacked_sphere(&s).unwrap();
        let cert = report.certificate.unwrap();
        let text = trace_to_text(&cert.trace);
        let back = trace_from_text(&text).unwrap();
        assert_eq!(back, cert.trace);
    }

    #[test]
    fn file_round_trip() {
        let dir = std::env::temp_dir().join("bundletri-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let k = kuhnel(2).unwrap();
        let txt = dir.join("k.cplx");
        let json = dir.join("k.json");
        export_complex(&k, &txt).unwrap();
        export_complex(&k, &json).unwrap();
        assert_eq!(import_complex(&txt).unwrap(), k);
        assert_eq!(import_complex(&json).unwrap(), k);
    }
}
