//! Finite acyclic graphs and their boundary-path groupoids: paths into
//! sinks under tail equivalence give one full-relation block per sink.
//! Hereditary saturated vertex sets correspond to invariant sets of
//! boundary paths, and quotients of the path groupoid match the graph
//! with those vertices deleted.

use crate::document::GraphDocument;
use crate::CliError;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use weylkit_core::groupoid::FiniteGroupoid;
use weylkit_core::iso::find_isomorphism;
use weylkit_core::pair::DiagonalPair;
use weylkit_core::quotient::quotient_pair;
use weylkit_core::report::{LawReport, Report};

pub struct Graph {
    pub vertices: Vec<String>,
    /// (edge id, source vertex, target vertex)
    pub edges: Vec<(String, usize, usize)>,
}

impl Graph {
    pub fn from_document(doc: &GraphDocument) -> Result<Self, CliError> {
        let index: BTreeMap<&str, usize> = doc
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        if index.len() != doc.vertices.len() {
            return Err(CliError::Input("duplicate vertex ids".into()));
        }
        let mut ids = BTreeSet::new();
        let edges = doc
            .edges
            .iter()
            .map(|e| {
                if !ids.insert(e.id.clone()) {
                    return Err(CliError::Input(format!("duplicate edge id {:?}", e.id)));
                }
                let s = *index
                    .get(e.src.as_str())
                    .ok_or_else(|| CliError::Input(format!("unknown vertex {:?}", e.src)))?;
                let t = *index
                    .get(e.dst.as_str())
                    .ok_or_else(|| CliError::Input(format!("unknown vertex {:?}", e.dst)))?;
                Ok((e.id.clone(), s, t))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Graph {
            vertices: doc.vertices.clone(),
            edges,
        })
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm over out-edges
        let n = self.vertices.len();
        let mut indegree = vec![0usize; n];
        for &(_, _, t) in &self.edges {
            indegree[t] += 1;
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for &(_, s, t) in &self.edges {
                if s == v {
                    indegree[t] -= 1;
                    if indegree[t] == 0 {
                        queue.push(t);
                    }
                }
            }
        }
        seen == n
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.edges.iter().all(|&(_, s, _)| s != v))
            .collect()
    }

    fn successors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|&&(_, s, _)| s == v)
            .map(|&(_, _, t)| t)
            .collect()
    }

    /// Closed under moving forward along edges.
    pub fn is_hereditary(&self, set: &BTreeSet<usize>) -> bool {
        set.iter()
            .all(|&v| self.successors(v).iter().all(|w| set.contains(w)))
    }

    /// Every vertex that emits edges and sends all of them into the set
    /// already belongs to the set.
    pub fn is_saturated(&self, set: &BTreeSet<usize>) -> bool {
        (0..self.vertices.len()).all(|v| {
            let succ = self.successors(v);
            succ.is_empty() || !succ.iter().all(|w| set.contains(w)) || set.contains(&v)
        })
    }

    /// All boundary paths: edge sequences ending at a sink, including
    /// the empty path at each sink. Returned as (path id, vertex trail).
    pub fn boundary_paths(&self) -> Vec<(String, Vec<usize>)> {
        let sinks: BTreeSet<usize> = self.sinks().into_iter().collect();
        let mut out = Vec::new();
        // depth-first extension from every vertex
        fn extend(
            graph: &Graph,
            sinks: &BTreeSet<usize>,
            vertex: usize,
            edge_trail: &mut Vec<usize>,
            vertex_trail: &mut Vec<usize>,
            out: &mut Vec<(String, Vec<usize>)>,
        ) {
            if sinks.contains(&vertex) {
                let id = if edge_trail.is_empty() {
                    graph.vertices[vertex].clone()
                } else {
                    edge_trail
                        .iter()
                        .map(|&e| graph.edges[e].0.clone())
                        .collect::<Vec<_>>()
                        .join(".")
                };
                out.push((id, vertex_trail.clone()));
            }
            for (i, &(_, s, t)) in graph.edges.iter().enumerate() {
                if s == vertex {
                    edge_trail.push(i);
                    vertex_trail.push(t);
                    extend(graph, sinks, t, edge_trail, vertex_trail, out);
                    vertex_trail.pop();
                    edge_trail.pop();
                }
            }
        }
        for v in 0..self.vertices.len() {
            let mut edge_trail = Vec::new();
            let mut vertex_trail = vec![v];
            extend(
                self,
                &sinks,
                v,
                &mut edge_trail,
                &mut vertex_trail,
                &mut out,
            );
        }
        out
    }

    /// The boundary-path groupoid: tail equivalence joins exactly the
    /// paths into a common sink, so the groupoid is a disjoint union of
    /// full relations, one block per sink. Errors when the graph has a
    /// cycle.
    pub fn path_groupoid(&self) -> Result<Arc<FiniteGroupoid>, CliError> {
        if !self.is_acyclic() {
            return Err(CliError::Input("graph has a cycle".into()));
        }
        let mut paths = self.boundary_paths();
        // deterministic unit order: by (sink, path id)
        paths.sort_by(|a, b| {
            let sink_a = *a.1.last().expect("trails are nonempty");
            let sink_b = *b.1.last().expect("trails are nonempty");
            (sink_a, &a.0).cmp(&(sink_b, &b.0))
        });
        let units: Vec<String> = paths.iter().map(|(id, _)| id.clone()).collect();
        let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, (_, trail)) in paths.iter().enumerate() {
            blocks
                .entry(*trail.last().expect("trails are nonempty"))
                .or_default()
                .push(i);
        }
        let mut related = BTreeSet::new();
        for block in blocks.values() {
            for &a in block {
                for &b in block {
                    related.insert((a, b));
                }
            }
        }
        let g = FiniteGroupoid::from_relation(units, &related)
            .map_err(|e| CliError::Input(e.to_string()))?;
        Ok(g.shared())
    }

    /// The units of the path groupoid whose trail meets the vertex set.
    pub fn paths_through(&self, set: &BTreeSet<usize>) -> Result<BTreeSet<usize>, CliError> {
        let mut paths = self.boundary_paths();
        paths.sort_by(|a, b| {
            let sink_a = *a.1.last().expect("trails are nonempty");
            let sink_b = *b.1.last().expect("trails are nonempty");
            (sink_a, &a.0).cmp(&(sink_b, &b.0))
        });
        Ok(paths
            .iter()
            .enumerate()
            .filter(|(_, (_, trail))| trail.iter().any(|v| set.contains(v)))
            .map(|(i, _)| i)
            .collect())
    }

    /// The graph with the vertex set and all incident edges removed.
    pub fn delete(&self, set: &BTreeSet<usize>) -> Graph {
        let keep: Vec<usize> = (0..self.vertices.len())
            .filter(|v| !set.contains(v))
            .collect();
        let renumber: BTreeMap<usize, usize> = keep
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        Graph {
            vertices: keep.iter().map(|&v| self.vertices[v].clone()).collect(),
            edges: self
                .edges
                .iter()
                .filter(|&&(_, s, t)| !set.contains(&s) && !set.contains(&t))
                .map(|(id, s, t)| (id.clone(), renumber[s], renumber[t]))
                .collect(),
        }
    }
}

/// The graph-quotient correspondence: for a hereditary saturated vertex
/// set, the boundary paths through it form an invariant set, and the
/// quotient pair's Weyl groupoid matches the path groupoid of the graph
/// with those vertices deleted. A full vertex set leaves no unit and is
/// recorded as the degenerate guard.
pub fn graph_quotient_check(
    graph: &Graph,
    hereditary_set: &BTreeSet<usize>,
    iso_cap: usize,
) -> Result<Report, CliError> {
    if !graph.is_acyclic() {
        return Err(CliError::Input("graph has a cycle".into()));
    }
    if !graph.is_hereditary(hereditary_set) {
        return Err(CliError::Input("vertex set is not hereditary".into()));
    }
    if !graph.is_saturated(hereditary_set) {
        return Err(CliError::Input("vertex set is not saturated".into()));
    }
    let mut report = Report::new("graph-quotient");
    let g = graph.path_groupoid()?;
    let pair = DiagonalPair::new(g.clone()).map_err(|e| CliError::Input(e.to_string()))?;
    let killed = graph.paths_through(hereditary_set)?;
    report.push(LawReport::named(
        "paths-through-invariant",
        "boundary paths through the set form an invariant set",
        g.is_invariant(&killed),
    ));
    if killed.len() == g.unit_count() {
        report.push(LawReport::named(
            "degenerate-guard",
            "full vertex set leaves the zero algebra; quotient excluded",
            true,
        ));
        return Ok(report);
    }
    let quotient = quotient_pair(&pair, &killed).map_err(|e| CliError::Input(e.to_string()))?;
    report.push(LawReport::named(
        "quotient-pair-valid",
        "quotient pair validates",
        quotient.pair.report().all(),
    ));
    let weyl = quotient
        .pair
        .weyl_groupoid()
        .map_err(|e| CliError::Input(e.to_string()))?;
    let deleted = graph.delete(hereditary_set);
    let expected = deleted.path_groupoid()?;
    let iso = find_isomorphism(&weyl.groupoid, &expected, iso_cap)
        .map_err(|e| CliError::Input(e.to_string()))?;
    report.push(LawReport::named(
        "quotient-weyl-matches-deleted-graph",
        "quotient Weyl groupoid is the path groupoid of the deleted graph",
        iso.is_some(),
    ));
    Ok(report)
}
