//! Edge-list and GraphML ingestion.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

/// Counts of input records dropped while building a simple graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseStats {
    pub duplicate_edges: usize,
    pub self_loops: usize,
}

#[derive(Debug, Clone)]
pub struct Parsed {
    pub graph: Graph,
    pub stats: ParseStats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    GraphMl,
}

impl GraphFormat {
    /// GraphML documents start with markup; anything else is read as an edge list.
    pub fn sniff(text: &str) -> Self {
        if text.trim_start_matches('\u{feff}').trim_start().starts_with('<') {
            GraphFormat::GraphMl
        } else {
            GraphFormat::EdgeList
        }
    }
}

pub fn parse_graph(text: &str, format: Option<GraphFormat>) -> Result<Parsed> {
    match format.unwrap_or_else(|| GraphFormat::sniff(text)) {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::GraphMl => parse_graphml(text),
    }
}

/// Interns external ids in first-appearance order.
#[derive(Default)]
struct Interner {
    index: HashMap<String, usize>,
    labels: Vec<String>,
}

impl Interner {
    fn intern(&mut self, id: &str) -> usize {
        if let Some(&i) = self.index.get(id) {
            return i;
        }
        let i = self.labels.len();
        self.index.insert(id.to_owned(), i);
        self.labels.push(id.to_owned());
        i
    }
}

/// Parses `u v` lines. `#` starts a comment; blank lines are ignored.
pub fn parse_edge_list(text: &str) -> Result<Parsed> {
    let mut ids = Interner::default();
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Parse {
                line: lineno + 1,
                message: format!("expected two vertex ids, found {:?}", line),
            });
        }
        let mut ends = [0usize; 2];
        for (slot, field) in ends.iter_mut().zip(&fields) {
            let id: u64 = field.parse().map_err(|_| Error::Parse {
                line: lineno + 1,
                message: format!("{:?} is not a non-negative integer id", field),
            })?;
            *slot = ids.intern(&id.to_string());
        }
        pairs.push((ends[0], ends[1]));
    }
    if ids.labels.is_empty() {
        return Err(Error::EmptyGraph);
    }
    finish(ids, pairs)
}

fn finish(ids: Interner, pairs: Vec<(usize, usize)>) -> Result<Parsed> {
    let (graph, duplicate_edges, self_loops) = Graph::from_pairs_lossy(ids.labels.len(), pairs)?;
    if duplicate_edges + self_loops > 0 {
        log::debug!("dropped {duplicate_edges} duplicate edges and {self_loops} self-loops");
    }
    Ok(Parsed {
        graph: graph.with_labels(ids.labels)?,
        stats: ParseStats {
            duplicate_edges,
            self_loops,
        },
    })
}

/// Parses the GraphML subset used by graph-drawing corpora: one `<graph>`
/// with `<node id>` and `<edge source target>` elements.
///
/// Nested graphs, hyperedges and ports are rejected. Edge direction is ignored.
pub fn parse_graphml(text: &str) -> Result<Parsed> {
    let doc = roxmltree::Document::parse(text).map_err(|e| Error::GraphMl(e.to_string()))?;
    let root = doc.root_element();
    if root.tag_name().name() != "graphml" {
        return Err(Error::GraphMl(format!(
            "root element is <{}>, expected <graphml>",
            root.tag_name().name()
        )));
    }
    let mut graphs = root.descendants().filter(|n| n.has_tag_name_local("graph"));
    let graph = graphs
        .next()
        .ok_or_else(|| Error::GraphMl("document contains no <graph>".into()))?;
    if graphs.next().is_some() {
        return Err(Error::GraphMl(
            "multiple or nested <graph> elements are not supported".into(),
        ));
    }
    for unsupported in ["hyperedge", "port"] {
        if graph.descendants().any(|n| n.has_tag_name_local(unsupported)) {
            return Err(Error::GraphMl(format!("<{unsupported}> is not supported")));
        }
    }

    let line_of = |node: roxmltree::Node| doc.text_pos_at(node.range().start).row as usize;
    let mut ids = Interner::default();
    for node in graph.children().filter(|n| n.has_tag_name_local("node")) {
        let id = node.attribute("id").ok_or_else(|| Error::Parse {
            line: line_of(node),
            message: "<node> without id".into(),
        })?;
        if ids.index.contains_key(id) {
            return Err(Error::Parse {
                line: line_of(node),
                message: format!("duplicate node id {id:?}"),
            });
        }
        ids.intern(id);
    }
    if ids.labels.is_empty() {
        return Err(Error::EmptyGraph);
    }

    let mut pairs = Vec::new();
    for edge in graph.children().filter(|n| n.has_tag_name_local("edge")) {
        let end = |attr: &str| -> Result<usize> {
            let id = edge.attribute(attr).ok_or_else(|| Error::Parse {
                line: line_of(edge),
                message: format!("<edge> without {attr}"),
            })?;
            ids.index.get(id).copied().ok_or_else(|| Error::Parse {
                line: line_of(edge),
                message: format!("edge {attr} {id:?} is not a declared node"),
            })
        };
        let u = end("source")?;
        let v = end("target")?;
        pairs.push((u, v));
    }
    finish(ids, pairs)
}

trait LocalName {
    fn has_tag_name_local(&self, name: &str) -> bool;
}

impl LocalName for roxmltree::Node<'_, '_> {
    fn has_tag_name_local(&self, name: &str) -> bool {
        self.is_element() && self.tag_name().name() == name
    }
}

/// Writes `u v` lines on dense indices, preceded by a `# n m` comment.
///
/// Isolated vertices cannot be expressed in this format; use GraphML for them.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("# n={} m={}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn write_graphml(g: &Graph) -> String {
    let mut out = String::from(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n\
         \x20 <graph id=\"G\" edgedefault=\"undirected\">\n",
    );
    for v in 0..g.vertex_count() {
        let _ = writeln!(out, "    <node id=\"n{v}\"/>");
    }
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        let _ = writeln!(out, "    <edge id=\"e{i}\" source=\"n{u}\" target=\"n{v}\"/>");
    }
    out.push_str("  </graph>\n</graphml>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_of_three() {
        let p = parse_edge_list("0 1\n1 2").unwrap();
        assert_eq!((p.graph.vertex_count(), p.graph.edge_count()), (3, 2));
    }

    #[test]
    fn drops_duplicates_and_loops() {
        let p = parse_edge_list("0 1\n0 1\n1 1").unwrap();
        assert_eq!((p.graph.vertex_count(), p.graph.edge_count()), (2, 1));
        assert_eq!(
            p.stats,
            ParseStats {
                duplicate_edges: 1,
                self_loops: 1
            }
        );
    }

    #[test]
    fn compacts_ids_in_first_appearance_order() {
        let p = parse_edge_list("# header\n\n40 7  # trailing\n7 1000\n").unwrap();
        let g = &p.graph;
        assert_eq!(g.labels().unwrap(), &["40", "7", "1000"]);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn edge_list_errors_carry_line_numbers() {
        match parse_edge_list("0 1\n1 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_edge_list("0 1 2"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("-1 2"), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list("# only comments\n\n"), Err(Error::EmptyGraph)));
    }

    const MINIMAL: &str = r#"<?xml version="1.0"?>
<graphml xmlns="http://graphml.graphdrawing.org/xmlns">
  <key id="d0" for="node" attr.name="label" attr.type="string"/>
  <graph id="G" edgedefault="directed">
    <node id="a"><data key="d0">A</data></node>
    <node id="b"/>
    <edge source="b" target="a"/>
  </graph>
</graphml>"#;

    #[test]
    fn minimal_graphml() {
        let p = parse_graphml(MINIMAL).unwrap();
        assert_eq!((p.graph.vertex_count(), p.graph.edge_count()), (2, 1));
        assert_eq!(p.graph.labels().unwrap(), &["a", "b"]);
    }

    #[test]
    fn graphml_matches_edge_list() {
        let el = parse_edge_list("0 1\n1 2\n2 0\n2 3").unwrap().graph;
        let gm = parse_graphml(&write_graphml(&el)).unwrap().graph;
        assert_eq!(el.edges(), gm.edges());
        assert_eq!(el.vertex_count(), gm.vertex_count());
        let back = parse_edge_list(&write_edge_list(&el)).unwrap().graph;
        assert_eq!(back.edges(), el.edges());
    }

    #[test]
    fn graphml_rejections() {
        assert!(matches!(parse_graphml("<graphml><graph>"), Err(Error::GraphMl(_))));
        assert!(matches!(
            parse_graphml("<graphml><graph id=\"G\"></graph></graphml>"),
            Err(Error::EmptyGraph)
        ));
        let nested = "<graphml><graph><node id=\"a\"><graph/></node></graph></graphml>";
        assert!(matches!(parse_graphml(nested), Err(Error::GraphMl(_))));
        let hyper = "<graphml><graph><node id=\"a\"/><hyperedge/></graph></graphml>";
        assert!(matches!(parse_graphml(hyper), Err(Error::GraphMl(_))));
        let dangling = "<graphml><graph><node id=\"a\"/>\n<edge source=\"a\" target=\"z\"/></graph></graphml>";
        assert!(matches!(parse_graphml(dangling), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn sniffing() {
        assert_eq!(GraphFormat::sniff(MINIMAL), GraphFormat::GraphMl);
        assert_eq!(GraphFormat::sniff("0 1\n"), GraphFormat::EdgeList);
        let p = parse_graph(MINIMAL, None).unwrap();
        assert_eq!(p.graph.edge_count(), 1);
    }
}
