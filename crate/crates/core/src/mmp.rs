//! The MMP hypergraph data model, parser, serializer and validator.
//!
//! A line such as `1234,4567,789A,ABCD,DEFG,GHI1,29BI,35CE,68FH.` lists
//! edges separated by commas and ends with a full stop. Whitespace is
//! ignored. Lines in the figure-to-draw format put the edges of the maximal
//! loop before a `,,,` separator and may mark loop vertices in later edges
//! with a trailing `*`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::BufRead;

use crate::label::{alphabet_rank, Label};

/// How `*` characters after a base character are interpreted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LoopMarkers {
    /// Treat `*` as a loop marker only when the line has a `,,,` separator,
    /// no `*` occurs among the loop edges, and every `*` follows a base
    /// character of a loop vertex. Otherwise `*` is an ordinary vertex.
    #[default]
    Auto,
    /// Always drop a `*` that follows a base character.
    Strip,
    /// `*` is always an ordinary vertex.
    Keep,
}

#[derive(Clone, Debug)]
pub struct ParseOptions {
    pub loop_markers: LoopMarkers,
    /// Silently drop repeated edges instead of failing.
    pub dedup_edges: bool,
    pub min_edge_size: usize,
    pub dimension: Option<usize>,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions { loop_markers: LoopMarkers::Auto, dedup_edges: false, min_edge_size: 3, dimension: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line does not end with '.'")]
    MissingTerminator,
    #[error("text after the terminating '.'")]
    TrailingText,
    #[error("character {ch:?} at offset {offset} is not in the MMP alphabet")]
    InvalidChar { ch: char, offset: usize },
    #[error("'+' prefix without a base character in edge {edge}")]
    DanglingPlus { edge: usize },
    #[error("empty edge at position {edge}")]
    EmptyEdge { edge: usize },
    #[error("more than one ',,,' loop separator")]
    RepeatedSeparator,
    #[error("vertex {vertex} repeated in edge {edge}")]
    DuplicateVertex { edge: usize, vertex: String },
    #[error("edge {second} repeats the vertex set of edge {first}")]
    DuplicateEdge { first: usize, second: usize },
    #[error("edge {edge} has {size} vertices, at least {min} are required")]
    EdgeTooSmall { edge: usize, size: usize, min: usize },
    #[error("hypergraph has no edges")]
    NoEdges,
}

/// Figure-to-draw metadata preserved from the source line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Figure {
    /// Number of leading edges that form the declared maximal loop.
    pub loop_edges: usize,
    /// Whether loop vertices in later edges carried `*` markers.
    pub marked: bool,
}

/// An immutable hypergraph: labelled vertices and an ordered list of edges.
///
/// Vertex indices are assigned in order of first appearance. The incidence
/// index (vertex to edges) is built on construction.
#[derive(Clone, Debug)]
pub struct Hypergraph {
    labels: Vec<Label>,
    edges: Vec<Vec<usize>>,
    incidence: Vec<Vec<usize>>,
    dimension: Option<usize>,
    figure: Option<Figure>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

impl Hypergraph {
    /// Builds a hypergraph from explicit parts. Vertices that lie in no
    /// edge are kept (they are reported by [`validate`]).
    ///
    /// Panics if an edge refers to a vertex index out of range.
    pub fn from_parts(labels: Vec<Label>, edges: Vec<Vec<usize>>) -> Self {
        let mut incidence = vec![Vec::new(); labels.len()];
        for (i, e) in edges.iter().enumerate() {
            for &v in e {
                incidence[v].push(i);
            }
        }
        Hypergraph { labels, edges, incidence, dimension: None, figure: None }
    }

    /// Builds a hypergraph from edges given as label lists.
    pub fn from_label_edges(edges: &[Vec<Label>]) -> Self {
        let mut index: HashMap<Label, usize> = HashMap::new();
        let mut labels = Vec::new();
        let mut out = Vec::with_capacity(edges.len());
        for e in edges {
            let mut ev = Vec::with_capacity(e.len());
            for l in e {
                let id = *index.entry(*l).or_insert_with(|| {
                    labels.push(*l);
                    labels.len() - 1
                });
                ev.push(id);
            }
            out.push(ev);
        }
        Self::from_parts(labels, out)
    }

    /// Builds a hypergraph whose vertex `i` is named by the `i`-th label
    /// of the canonical order.
    pub fn from_index_edges(n_vertices: usize, edges: Vec<Vec<usize>>) -> Self {
        Self::from_parts((0..n_vertices).map(Label::from_index).collect(), edges)
    }

    pub fn with_dimension(mut self, dimension: Option<usize>) -> Self {
        self.dimension = dimension;
        self
    }

    pub fn n_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// The conventional `n-m` name.
    pub fn type_name(&self) -> String {
        format!("{}-{}", self.n_vertices(), self.n_edges())
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[usize] {
        &self.edges[i]
    }

    /// Edges containing vertex `v`, in increasing index order.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn label(&self, v: usize) -> Label {
        self.labels[v]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        let l = Label::parse(name)?;
        self.labels.iter().position(|&x| x == l)
    }

    pub fn dimension(&self) -> Option<usize> {
        self.dimension
    }

    pub fn figure(&self) -> Option<&Figure> {
        self.figure.as_ref()
    }

    /// Largest edge size (0 for an empty hypergraph).
    pub fn max_edge_size(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Uniform edge size if all edges have the same size.
    pub fn uniform_edge_size(&self) -> Option<usize> {
        let s = self.edges.first()?.len();
        self.edges.iter().all(|e| e.len() == s).then_some(s)
    }

    /// The sub-hypergraph on the edges flagged in `keep`, with stranded
    /// vertices dropped. Kept vertices and edges preserve relative order.
    pub fn retain_edges(&self, keep: impl Fn(usize) -> bool) -> Hypergraph {
        let kept: Vec<usize> = (0..self.n_edges()).filter(|&i| keep(i)).collect();
        self.select_edges(&kept)
    }

    /// The sub-hypergraph formed by the given edges (in the given order).
    pub fn select_edges(&self, edges: &[usize]) -> Hypergraph {
        let mut map = vec![usize::MAX; self.n_vertices()];
        let mut used = vec![false; self.n_vertices()];
        for &i in edges {
            for &v in &self.edges[i] {
                used[v] = true;
            }
        }
        let mut labels = Vec::new();
        for v in 0..self.n_vertices() {
            if used[v] {
                map[v] = labels.len();
                labels.push(self.labels[v]);
            }
        }
        let new_edges = edges.iter().map(|&i| self.edges[i].iter().map(|&v| map[v]).collect()).collect();
        Hypergraph::from_parts(labels, new_edges).with_dimension(self.dimension)
    }

    /// Removes one edge and any vertex left without edges.
    pub fn without_edge(&self, i: usize) -> Hypergraph {
        self.retain_edges(|j| j != i)
    }

    /// Same structure with vertex `v` renamed to `names[v]`.
    pub fn renamed(&self, names: Vec<Label>) -> Hypergraph {
        assert_eq!(names.len(), self.n_vertices());
        Hypergraph::from_parts(names, self.edges.clone()).with_dimension(self.dimension)
    }

    /// Same structure with vertex indices renumbered in order of first
    /// appearance and every vertex renamed to the canonical label sequence.
    pub fn with_alphabet_names(&self) -> Hypergraph {
        let mut map = vec![usize::MAX; self.n_vertices()];
        let mut next = 0;
        let edges = self
            .edges
            .iter()
            .map(|e| {
                e.iter()
                    .map(|&v| {
                        if map[v] == usize::MAX {
                            map[v] = next;
                            next += 1;
                        }
                        map[v]
                    })
                    .collect()
            })
            .collect();
        Hypergraph::from_index_edges(next, edges).with_dimension(self.dimension)
    }

    /// Appends an edge given by vertex indices.
    pub fn with_edge(&self, edge: Vec<usize>) -> Hypergraph {
        let mut edges = self.edges.clone();
        edges.push(edge);
        Hypergraph::from_parts(self.labels.clone(), edges).with_dimension(self.dimension)
    }

    /// Serializes exactly as parsed: figure-to-draw lines keep their `,,,`
    /// separator and `*` markers.
    pub fn to_mmp(&self) -> String {
        let mut out = String::new();
        let loop_len = self.figure.as_ref().map(|f| f.loop_edges);
        let marked = self.figure.as_ref().map(|f| f.marked).unwrap_or(false);
        let mut in_loop = vec![false; self.n_vertices()];
        if let Some(k) = loop_len {
            for e in &self.edges[..k] {
                for &v in e {
                    in_loop[v] = true;
                }
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            if Some(i) == loop_len {
                out.push_str(",,");
            }
            for &v in e {
                out.push_str(&self.labels[v].to_string());
                if marked && loop_len.is_some_and(|k| i >= k) && in_loop[v] {
                    out.push('*');
                }
            }
        }
        out.push('.');
        out
    }

    /// Serializes as a plain MMP line, without figure metadata.
    pub fn to_plain_mmp(&self) -> String {
        let mut out = String::new();
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            for &v in e {
                out.push_str(&self.labels[v].to_string());
            }
        }
        out.push('.');
        out
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_mmp())
    }
}

/// Serializes a hypergraph as an MMP line. Fails on an empty hypergraph.
pub fn serialize_mmp(h: &Hypergraph) -> Result<String, ParseError> {
    if h.n_edges() == 0 {
        return Err(ParseError::NoEdges);
    }
    Ok(h.to_mmp())
}

/// Parses one MMP line with default options.
pub fn parse_mmp(text: &str) -> Result<Hypergraph, ParseError> {
    parse_mmp_with(text, &ParseOptions::default())
}

#[derive(Clone, Copy)]
struct Tok {
    ch: char,
    offset: usize,
}

pub fn parse_mmp_with(text: &str, opts: &ParseOptions) -> Result<Hypergraph, ParseError> {
    let toks: Vec<Tok> =
        text.char_indices().filter(|(_, c)| !c.is_whitespace()).map(|(offset, ch)| Tok { ch, offset }).collect();
    let Some(end) = toks.iter().position(|t| t.ch == '.') else {
        return Err(ParseError::MissingTerminator);
    };
    if end + 1 != toks.len() {
        return Err(ParseError::TrailingText);
    }
    let body = &toks[..end];
    if body.is_empty() {
        return Err(ParseError::NoEdges);
    }

    // Split on commas, locating the optional `,,,` separator.
    let mut groups: Vec<&[Tok]> = Vec::new();
    let mut start = 0;
    for i in 0..=body.len() {
        if i == body.len() || body[i].ch == ',' {
            groups.push(&body[start..i]);
            start = i + 1;
        }
    }
    let mut edges_raw: Vec<&[Tok]> = Vec::new();
    let mut loop_edges = None;
    let mut i = 0;
    while i < groups.len() {
        if groups[i].is_empty() {
            let run = groups[i..].iter().take_while(|g| g.is_empty()).count();
            if run == 2 && i > 0 && i + run < groups.len() {
                if loop_edges.is_some() {
                    return Err(ParseError::RepeatedSeparator);
                }
                loop_edges = Some(edges_raw.len());
                i += run;
                continue;
            }
            return Err(ParseError::EmptyEdge { edge: edges_raw.len() });
        }
        edges_raw.push(groups[i]);
        i += 1;
    }
    if edges_raw.is_empty() {
        return Err(ParseError::NoEdges);
    }

    let strip_markers = match opts.loop_markers {
        LoopMarkers::Keep => false,
        LoopMarkers::Strip => true,
        LoopMarkers::Auto => loop_edges.is_some_and(|k| markers_plausible(&edges_raw, k)),
    };

    let mut label_edges: Vec<Vec<Label>> = Vec::with_capacity(edges_raw.len());
    let mut saw_marker = false;
    for (ei, g) in edges_raw.iter().enumerate() {
        let mut labels = Vec::new();
        let mut prefix = 0u32;
        for (k, t) in g.iter().enumerate() {
            if t.ch == '+' {
                prefix += 1;
                continue;
            }
            if t.ch == '*' && strip_markers && prefix == 0 && k > 0 && is_base(g[k - 1].ch) {
                saw_marker = true;
                continue;
            }
            let Some(r) = alphabet_rank(t.ch) else {
                return Err(ParseError::InvalidChar { ch: t.ch, offset: t.offset });
            };
            labels.push(Label::new(prefix, r));
            prefix = 0;
        }
        if prefix > 0 {
            return Err(ParseError::DanglingPlus { edge: ei });
        }
        label_edges.push(labels);
    }

    let mut seen: HashMap<Vec<Label>, usize> = HashMap::new();
    let mut kept: Vec<Vec<Label>> = Vec::with_capacity(label_edges.len());
    let mut loop_kept = loop_edges;
    for (ei, e) in label_edges.into_iter().enumerate() {
        let mut sorted = e.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(ParseError::DuplicateVertex { edge: ei, vertex: w[0].to_string() });
        }
        if e.len() < opts.min_edge_size {
            return Err(ParseError::EdgeTooSmall { edge: ei, size: e.len(), min: opts.min_edge_size });
        }
        if let Some(&first) = seen.get(&sorted) {
            if opts.dedup_edges {
                if let Some(k) = loop_kept.as_mut() {
                    if ei < loop_edges.unwrap_or(0) {
                        *k -= 1;
                    }
                }
                continue;
            }
            return Err(ParseError::DuplicateEdge { first, second: ei });
        }
        seen.insert(sorted, ei);
        kept.push(e);
    }

    let mut h = Hypergraph::from_label_edges(&kept).with_dimension(opts.dimension);
    h.figure = loop_kept.map(|k| Figure { loop_edges: k, marked: saw_marker });
    Ok(h)
}

fn is_base(c: char) -> bool {
    alphabet_rank(c).is_some()
}

/// Decides whether `*` characters in a figure-to-draw line are markers.
fn markers_plausible(edges: &[&[Tok]], loop_edges: usize) -> bool {
    let mut loop_vertices: Vec<(u32, char)> = Vec::new();
    for g in &edges[..loop_edges] {
        let mut prefix = 0;
        for t in g.iter() {
            if t.ch == '*' {
                return false;
            }
            if t.ch == '+' {
                prefix += 1;
            } else {
                loop_vertices.push((prefix, t.ch));
                prefix = 0;
            }
        }
    }
    for g in &edges[loop_edges..] {
        let mut prefix = 0;
        let mut last: Option<(u32, char)> = None;
        for t in g.iter() {
            match t.ch {
                '+' => {
                    prefix += 1;
                    last = None;
                }
                '*' => {
                    if prefix > 0 {
                        return false;
                    }
                    match last.take() {
                        Some(v) if loop_vertices.contains(&v) => {}
                        _ => return false,
                    }
                }
                c => {
                    last = Some((prefix, c));
                    prefix = 0;
                }
            }
        }
    }
    true
}

/// A problem found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Condition (i): a vertex lies in no edge.
    IsolatedVertex { vertex: String },
    /// Condition (ii): an edge has fewer than three vertices.
    ShortEdge { edge: usize, size: usize },
    /// Condition (iii): two edges meet in n-2 vertices although one of
    /// them has fewer than n vertices.
    SmallIntersectingEdges { a: usize, b: usize, n: usize },
    DuplicateVertex { edge: usize, vertex: String },
    DuplicateEdge { first: usize, second: usize },
    /// Edge size differs from the declared dimension.
    SizeMismatch { edge: usize, size: usize, dimension: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IsolatedVertex { vertex } => write!(f, "vertex {vertex} belongs to no edge"),
            Violation::ShortEdge { edge, size } => write!(f, "edge {edge} has only {size} vertices"),
            Violation::SmallIntersectingEdges { a, b, n } => {
                write!(f, "edges {a} and {b} meet in {} vertices but one has fewer than {n}", n - 2)
            }
            Violation::DuplicateVertex { edge, vertex } => write!(f, "edge {edge} repeats vertex {vertex}"),
            Violation::DuplicateEdge { first, second } => write!(f, "edge {second} repeats edge {first}"),
            Violation::SizeMismatch { edge, size, dimension } => {
                write!(f, "edge {edge} has {size} vertices, dimension is {dimension}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the MMP conditions and, if given, uniform edge size.
///
/// Condition (iii) is checked per edge pair with `n` the declared
/// dimension, or the larger edge size of the pair when none is declared.
pub fn validate(h: &Hypergraph, dimension: Option<usize>) -> ValidationReport {
    let dimension = dimension.or(h.dimension());
    let mut violations = Vec::new();
    for v in 0..h.n_vertices() {
        if h.degree(v) == 0 {
            violations.push(Violation::IsolatedVertex { vertex: h.label(v).to_string() });
        }
    }
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    for (i, e) in h.edges().iter().enumerate() {
        if e.len() < 3 {
            violations.push(Violation::ShortEdge { edge: i, size: e.len() });
        }
        let mut s = e.clone();
        s.sort_unstable();
        if let Some(w) = s.windows(2).find(|w| w[0] == w[1]) {
            violations.push(Violation::DuplicateVertex { edge: i, vertex: h.label(w[0]).to_string() });
        }
        s.dedup();
        if let Some(&first) = seen.get(&s) {
            violations.push(Violation::DuplicateEdge { first, second: i });
        } else {
            seen.insert(s, i);
        }
        if let Some(d) = dimension {
            if e.len() != d {
                violations.push(Violation::SizeMismatch { edge: i, size: e.len(), dimension: d });
            }
        }
    }
    // Condition (iii) can only fail when edge sizes differ.
    if h.uniform_edge_size().is_none() || dimension.is_some_and(|d| h.uniform_edge_size() != Some(d)) {
        let mut mark = vec![usize::MAX; h.n_vertices()];
        for (a, ea) in h.edges().iter().enumerate() {
            for &v in ea {
                mark[v] = a;
            }
            for b in a + 1..h.n_edges() {
                let eb = h.edge(b);
                let n = dimension.unwrap_or(ea.len().max(eb.len()));
                if n < 2 {
                    continue;
                }
                let common = eb.iter().filter(|&&v| mark[v] == a).count();
                if common == n - 2 && (ea.len() < n || eb.len() < n) {
                    violations.push(Violation::SmallIntersectingEdges { a, b, n });
                }
            }
        }
    }
    ValidationReport { violations }
}

/// Per-vertex degrees and their histogram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub histogram: BTreeMap<usize, usize>,
}

pub fn degree_profile(h: &Hypergraph) -> DegreeProfile {
    let degrees: Vec<usize> = (0..h.n_vertices()).map(|v| h.degree(v)).collect();
    let mut histogram = BTreeMap::new();
    for &d in &degrees {
        *histogram.entry(d).or_insert(0) += 1;
    }
    DegreeProfile { degrees, histogram }
}

/// One hypergraph line from an MMP file.
#[derive(Clone, Debug)]
pub struct Record {
    /// Name from a preceding `#: name` comment, if any.
    pub name: Option<String>,
    /// 1-based line number.
    pub line: usize,
    pub hypergraph: Hypergraph,
}

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("line {line}: {source}")]
    Parse { line: usize, source: ParseError },
    #[error("line {line}: malformed header {text:?}")]
    Header { line: usize, text: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Streaming reader for MMP files: one hypergraph per line, `#` comments,
/// an optional `%dim N` header, and `#: name` annotations that name the
/// following line.
pub struct MmpReader<R> {
    inner: R,
    opts: ParseOptions,
    line: usize,
    pending_name: Option<String>,
    buf: String,
}

impl<R: BufRead> MmpReader<R> {
    pub fn new(inner: R, opts: ParseOptions) -> Self {
        MmpReader { inner, opts, line: 0, pending_name: None, buf: String::new() }
    }

    /// Dimension from the most recent `%dim` header (or the options).
    pub fn dimension(&self) -> Option<usize> {
        self.opts.dimension
    }
}

impl<R: BufRead> Iterator for MmpReader<R> {
    type Item = Result<Record, FileError>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            self.buf.clear();
            match self.inner.read_line(&mut self.buf) {
                Ok(0) => return None,
                Ok(_) => {}
                Err(e) => return Some(Err(e.into())),
            }
            self.line += 1;
            let t = self.buf.trim();
            if t.is_empty() {
                continue;
            }
            if let Some(rest) = t.strip_prefix("#:") {
                self.pending_name = Some(rest.trim().to_string());
                continue;
            }
            if t.starts_with('#') {
                continue;
            }
            if let Some(rest) = t.strip_prefix("%dim") {
                match rest.trim().parse::<usize>() {
                    Ok(d) if d > 0 => self.opts.dimension = Some(d),
                    _ => return Some(Err(FileError::Header { line: self.line, text: t.to_string() })),
                }
                continue;
            }
            let name = self.pending_name.take();
            return Some(
                parse_mmp_with(t, &self.opts)
                    .map(|hypergraph| Record { name, line: self.line, hypergraph })
                    .map_err(|source| FileError::Parse { line: self.line, source }),
            );
        }
    }
}

/// Parses a whole MMP file held in memory.
pub fn parse_mmp_file(text: &str, opts: &ParseOptions) -> Result<Vec<Record>, FileError> {
    MmpReader::new(text.as_bytes(), opts.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const S18_9: &str = "1234,4567,789A,ABCD,DEFG,GHI1,29BI,35CE,68FH.";

    #[test]
    fn parses_18_9() {
        let h = parse_mmp(S18_9).unwrap();
        assert_eq!((h.n_vertices(), h.n_edges()), (18, 9));
        assert_eq!(serialize_mmp(&h).unwrap(), S18_9);
        assert!(degree_profile(&h).degrees.iter().all(|&d| d == 2));
        assert!(validate(&h, Some(4)).is_valid());
    }

    #[test]
    fn whitespace_is_ignored() {
        let h = parse_mmp(" 123, 341 ,\t412, 234 . ").unwrap();
        assert_eq!((h.n_vertices(), h.n_edges()), (4, 4));
        assert_eq!(h.to_mmp(), "123,341,412,234.");
    }

    #[test]
    fn plus_prefixes_make_distinct_vertices() {
        let h = parse_mmp("+1+2+3z,z12+1.").unwrap();
        assert_eq!(h.n_vertices(), 6);
        let names: Vec<String> = h.edge(0).iter().map(|&v| h.label(v).to_string()).collect();
        assert_eq!(names, ["+1", "+2", "+3", "z"]);
        assert_ne!(h.vertex("+1"), h.vertex("1"));
        let deep = parse_mmp("+++A++AA,B+++AC.").unwrap();
        assert_eq!(deep.n_vertices(), 5);
        assert_eq!(deep.to_mmp(), "+++A++AA,B+++AC.");
    }

    #[test]
    fn grammar_errors() {
        assert!(matches!(parse_mmp("12,34."), Err(ParseError::EdgeTooSmall { .. })));
        assert_eq!(parse_mmp("1234"), Err(ParseError::MissingTerminator));
        assert!(matches!(parse_mmp("12.4,567."), Err(ParseError::TrailingText)));
        assert!(matches!(parse_mmp("123,45 6,78+."), Err(ParseError::DanglingPlus { edge: 2 })));
        assert!(matches!(parse_mmp("1231."), Err(ParseError::DuplicateVertex { .. })));
        assert!(matches!(parse_mmp("123,321."), Err(ParseError::DuplicateEdge { first: 0, second: 1 })));
        assert!(matches!(parse_mmp("123,,456."), Err(ParseError::EmptyEdge { .. })));
        assert!(matches!(parse_mmp("123,456,."), Err(ParseError::EmptyEdge { .. })));
        assert!(matches!(parse_mmp("12é4."), Err(ParseError::InvalidChar { ch: 'é', .. })));
        assert_eq!(parse_mmp("."), Err(ParseError::NoEdges));
    }

    #[test]
    fn dedup_flag_drops_repeats() {
        let opts = ParseOptions { dedup_edges: true, ..Default::default() };
        let h = parse_mmp_with("123,321,345.", &opts).unwrap();
        assert_eq!(h.n_edges(), 2);
    }

    #[test]
    fn figure_format_markers() {
        let line = "1234,4567,789A,ABCD,DEFG,GHI1,,,I*2*9*B*,3*5*C*E*,6*8*F*H*.";
        let h = parse_mmp(line).unwrap();
        assert_eq!((h.n_vertices(), h.n_edges()), (18, 9));
        assert_eq!(h.figure(), Some(&Figure { loop_edges: 6, marked: true }));
        assert_eq!(h.to_mmp(), line);
        assert_eq!(h.to_plain_mmp(), "1234,4567,789A,ABCD,DEFG,GHI1,I29B,35CE,68FH.");
    }

    #[test]
    fn star_is_a_vertex_when_not_a_marker() {
        // '*' inside the loop prefix means it is a real vertex.
        let h = parse_mmp("12*4,4567,,,*89A.").unwrap();
        assert_eq!(h.n_vertices(), 10);
        assert_eq!(h.figure().unwrap().marked, false);
        // '*' without a separator is a vertex.
        let h = parse_mmp("()*-,-123.").unwrap();
        assert_eq!(h.n_vertices(), 7);
        // Forced stripping.
        let opts = ParseOptions { loop_markers: LoopMarkers::Strip, ..Default::default() };
        assert_eq!(parse_mmp_with("1*234.", &opts).unwrap().n_vertices(), 4);
        let opts = ParseOptions { loop_markers: LoopMarkers::Keep, ..Default::default() };
        let h = parse_mmp_with("1234,4567,,,1*89A.", &opts).unwrap();
        assert!(h.vertex("*").is_some());
    }

    #[test]
    fn validation_report() {
        let h = parse_mmp("1234,1256.").unwrap();
        assert!(validate(&h, Some(4)).is_valid());
        let h = Hypergraph::from_index_edges(5, vec![vec![0, 1, 2, 3]]);
        let r = validate(&h, None);
        assert_eq!(r.violations, vec![Violation::IsolatedVertex { vertex: "5".into() }]);
        let h = parse_mmp("1234,125.").unwrap();
        let r = validate(&h, Some(4));
        assert!(r.violations.contains(&Violation::SizeMismatch { edge: 1, size: 3, dimension: 4 }));
        assert!(r.violations.contains(&Violation::SmallIntersectingEdges { a: 0, b: 1, n: 4 }));
    }

    #[test]
    fn degree_profile_single_edge() {
        let p = degree_profile(&parse_mmp("123.").unwrap());
        assert_eq!(p.degrees, vec![1, 1, 1]);
        assert_eq!(p.histogram.get(&1), Some(&3));
    }

    #[test]
    fn file_reader_headers_and_names() {
        let text = "%dim 4\n# comment\n#: first\n1234,4567.\n\n123,345.\n";
        let recs = parse_mmp_file(text, &ParseOptions::default()).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].name.as_deref(), Some("first"));
        assert_eq!(recs[0].hypergraph.dimension(), Some(4));
        assert_eq!(recs[1].name, None);
        assert_eq!(recs[1].line, 6);
        assert!(parse_mmp_file("%dim x\n", &ParseOptions::default()).is_err());
    }

    #[test]
    fn edge_removal_drops_stranded_vertices() {
        let h = parse_mmp(S18_9).unwrap();
        let g = h.without_edge(0);
        assert_eq!((g.n_vertices(), g.n_edges()), (18, 8));
        assert_eq!(g.to_mmp(), "4567,789A,ABCD,DEFG,GHI1,29BI,35CE,68FH.");
        let g = parse_mmp("1234,4567.").unwrap().without_edge(0);
        assert_eq!((g.n_vertices(), g.to_mmp().as_str()), (4, "4567."));
    }
}
