//! Job files: one TOML document describes a group, its subgroups, the
//! complex to build, the checks to run, and where to write artifacts.
//!
//! A job file is a TOML table of optional sections; which sections a command
//! needs is documented per command in [`crate::cli`]. The format round-trips
//! (parse, print, parse again yields the same configuration) and unknown
//! keys are rejected so that typos fail loudly.
//!
//! Three small text grammars appear inside string values:
//!
//! * **Group expressions** (`[group] expression`, `[tree] x_group`):
//!   `symmetric(n)`, `cyclic(n)`, `psl2(p)`, `pgl2(p)`, `trivial(n)`,
//!   `direct_product(expr, expr, ...)`, or `explicit(...)` with generators
//!   in cycle notation, e.g. `explicit((1 2 3), (1 2))`; an optional leading
//!   integer fixes the degree, as in `explicit(5, (1 2))`.
//! * **Cycle notation** (`explicit(...)`, subgroup generators, complex
//!   symmetries): 1-based, e.g. `(1 2)(3 4 5)`; cycles compose left to
//!   right under the right-action convention, and `()` is the identity.
//! * **Search specs** (`[subgroups] search`): whitespace-separated
//!   `order=N`, `nonabelian` (or `any`), `count=N`; an optional leading
//!   word `search` is ignored so specs can be quoted verbatim.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::certify::CertifyOptions;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::{PermGroup, Permutation};
use crate::pipeline::{BuiltGroup, SearchSpec};

// ---------------------------------------------------------------------------
// The job file
// ---------------------------------------------------------------------------

/// A parsed job file. Every section is optional; commands report a precise
/// error when a section they need is missing.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroups: Option<SubgroupsSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raag: Option<RaagSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tree: Option<TreeSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<ChecksSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSection>,
}

/// The ambient group, as a constructor expression.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSection {
    /// For example `direct_product(psl2(13), cyclic(3), cyclic(3))`.
    pub expression: String,
}

/// Three subgroups of the ambient group, either written out as generator
/// lists or found by search.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupsSection {
    /// A search spec such as `"order=39 nonabelian count=3"`; mutually
    /// exclusive with `generators`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<String>,
    /// One generator list per subgroup. Each entry is either cycle notation
    /// (`"(1 2)(3 4)"`) or a word in the ambient group's generators
    /// (`"g1 g2^-1"`, 1-based, applied left to right).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<Vec<String>>,
}

/// Where the complex comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComplexSource {
    /// The coset complex of the `[group]` and `[subgroups]` sections.
    Coset,
    /// An explicit facet list.
    Facets,
}

/// The simplicial complex to build.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSection {
    pub source: ComplexSource,
    /// Vertex count for `source = "facets"`; defaults to one past the
    /// largest vertex mentioned.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<usize>,
    /// Facets as lists of 0-based vertices (only for `source = "facets"`).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub facets: Vec<Vec<u32>>,
    /// Optional symmetry generators for `source = "facets"`, as 1-based
    /// cycle notation on the vertices; they feed the action premises of the
    /// certificate.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub symmetries: Vec<String>,
}

/// A right-angled Artin group job: a defining graph plus words to analyze.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RaagSection {
    /// `octahedron`, `path(n)`, `cycle(n)`, `complete(n)`, `empty(n)`, or
    /// `edges` to use the explicit `vertices`/`edges` fields.
    pub graph: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<usize>,
    /// Explicit edge list (0-based) when `graph = "edges"`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<[u32; 2]>,
    /// Words over the vertex generators, e.g. `"0 1^-1 0"` (0-based
    /// vertices, `v^k` for powers, `e` for the identity).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub words: Vec<String>,
}

/// A biregular tree ball job: degrees, local groups, radius.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeSection {
    /// Degree of the root side (out-degree of every vertex on it).
    pub x_degree: usize,
    /// Degree of the other side.
    pub y_degree: usize,
    /// Local group on the root side, as a group expression of matching
    /// degree, e.g. `symmetric(2)`.
    pub x_group: String,
    /// Local group on the other side, e.g. `symmetric(3)`.
    pub y_group: String,
    /// Ball radius (edges from the root).
    pub radius: usize,
    /// Restrict enumeration to maps fixing the root (default `true`).
    #[serde(default = "default_true")]
    pub fix_root: bool,
}

/// Which optional analyses to run; everything defaults to on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ChecksSection {
    /// Survey vertex links and evaluate the girth premise.
    pub links: bool,
    /// Compute homology and evaluate the `H_1` premise. This is the
    /// expensive step on large complexes.
    pub homology: bool,
    /// Report the triangle-orbit census of the plain right-multiplication
    /// action alongside the certificate.
    pub triangle_orbits: bool,
}

impl Default for ChecksSection {
    fn default() -> Self {
        ChecksSection { links: true, homology: true, triangle_orbits: true }
    }
}

impl ChecksSection {
    /// Certification options matching these switches.
    pub fn certify_options(&self, threads: Option<usize>) -> CertifyOptions {
        CertifyOptions { threads, with_links: self.links, with_homology: self.homology }
    }
}

/// Artifact destinations.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    /// Directory for JSON artifacts and text reports; default is the
    /// current directory, and the command line can override it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub directory: Option<String>,
}

fn default_true() -> bool {
    true
}

impl JobConfig {
    /// Parses a TOML job file, rejecting unknown keys.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text)
            .map_err(|e| Error::parse(e.span().map(|s| s.start).unwrap_or(0), e.message()))
    }

    /// Reads and parses a job file from disk.
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str(&text)
    }

    /// Prints the configuration as TOML; parsing the result reproduces
    /// `self`.
    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::input(format!("cannot serialize config: {e}")))
    }

    /// The checks section, or its defaults when absent.
    pub fn checks(&self) -> ChecksSection {
        self.checks.unwrap_or_default()
    }

    /// Builds the ambient group from the `[group]` section.
    pub fn build_group(&self) -> Result<BuiltGroup> {
        let section = self
            .group
            .as_ref()
            .ok_or_else(|| Error::input("this command needs a [group] section"))?;
        parse_group_expression(&section.expression)
    }

    /// Resolves the `[subgroups]` section against the ambient group.
    pub fn subgroup_plan(&self, built: &BuiltGroup) -> Result<SubgroupPlan> {
        let section = self
            .subgroups
            .as_ref()
            .ok_or_else(|| Error::input("this command needs a [subgroups] section"))?;
        section.plan(built)
    }

    /// Checks every parseable field without running anything, so commands
    /// can fail before writing any artifact.
    pub fn validate(&self) -> Result<()> {
        let built = match &self.group {
            Some(_) => Some(self.build_group()?),
            None => None,
        };
        if let Some(subgroups) = &self.subgroups {
            match &built {
                Some(b) => {
                    subgroups.plan(b)?;
                }
                None => {
                    // Without a group the generator words cannot be resolved,
                    // but the search spec can still be checked.
                    if let Some(search) = &subgroups.search {
                        parse_search_spec(search)?;
                    }
                }
            }
        }
        if let Some(complex) = &self.complex {
            match complex.source {
                ComplexSource::Coset => {
                    if self.group.is_none() || self.subgroups.is_none() {
                        return Err(Error::input(
                            "complex source \"coset\" needs [group] and [subgroups] sections",
                        ));
                    }
                    if !complex.facets.is_empty() || !complex.symmetries.is_empty() {
                        return Err(Error::input(
                            "complex source \"coset\" does not take facets or symmetries",
                        ));
                    }
                }
                ComplexSource::Facets => {
                    if complex.facets.is_empty() {
                        return Err(Error::input(
                            "complex source \"facets\" needs a nonempty facet list",
                        ));
                    }
                    let vertices = complex.facet_vertex_count()?;
                    for text in &complex.symmetries {
                        Permutation::parse_cycles(text, vertices)?;
                    }
                }
            }
        }
        if let Some(raag) = &self.raag {
            raag.build_graph()?;
        }
        if let Some(tree) = &self.tree {
            tree.local_groups()?;
            if tree.radius == 0 {
                return Err(Error::input("tree radius must be at least 1"));
            }
        }
        Ok(())
    }
}

impl ComplexSection {
    /// The vertex count for an explicit facet list: the `vertices` field, or
    /// one past the largest vertex mentioned.
    pub fn facet_vertex_count(&self) -> Result<usize> {
        let max_seen = self.facets.iter().flatten().max().map(|&v| v as usize + 1).unwrap_or(0);
        match self.vertices {
            None => Ok(max_seen),
            Some(n) if n >= max_seen => Ok(n),
            Some(n) => Err(Error::input(format!(
                "vertices = {n} but a facet mentions vertex {}",
                max_seen - 1
            ))),
        }
    }
}

/// How the three subgroups will be obtained.
#[derive(Clone, Debug)]
pub enum SubgroupPlan {
    /// Search the ambient group with the given spec.
    Search(SearchSpec),
    /// Use these explicitly given subgroups.
    Explicit(Vec<PermGroup>),
}

impl SubgroupsSection {
    /// Resolves this section against the ambient group.
    pub fn plan(&self, built: &BuiltGroup) -> Result<SubgroupPlan> {
        match (&self.search, self.generators.is_empty()) {
            (Some(_), false) => {
                Err(Error::input("[subgroups] takes either search or generators, not both"))
            }
            (None, true) => {
                Err(Error::input("[subgroups] needs either search or generators"))
            }
            (Some(search), true) => Ok(SubgroupPlan::Search(parse_search_spec(search)?)),
            (None, false) => {
                let mut subgroups = Vec::with_capacity(self.generators.len());
                for words in &self.generators {
                    let perms = words
                        .iter()
                        .map(|w| parse_generator_word(w, built.group()))
                        .collect::<Result<Vec<_>>>()?;
                    subgroups.push(PermGroup::new(built.group().degree(), perms)?);
                }
                Ok(SubgroupPlan::Explicit(subgroups))
            }
        }
    }
}

impl RaagSection {
    /// Builds the defining graph.
    pub fn build_graph(&self) -> Result<Graph> {
        if self.graph == "edges" {
            let pairs: Vec<(u32, u32)> = self.edges.iter().map(|&[u, v]| (u, v)).collect();
            let max_seen =
                pairs.iter().flat_map(|&(u, v)| [u, v]).max().map(|v| v as usize + 1).unwrap_or(0);
            let n = match self.vertices {
                None => max_seen,
                Some(n) if n >= max_seen => n,
                Some(n) => {
                    return Err(Error::input(format!(
                        "vertices = {n} but an edge mentions vertex {}",
                        max_seen - 1
                    )))
                }
            };
            return Graph::from_edges(n, &pairs);
        }
        if !self.edges.is_empty() || self.vertices.is_some() {
            return Err(Error::input(
                "vertices/edges fields are only used with graph = \"edges\"",
            ));
        }
        parse_named_graph(&self.graph)
    }
}

impl TreeSection {
    /// Resolves the two local groups and checks their degrees.
    pub fn local_groups(&self) -> Result<(PermGroup, PermGroup)> {
        let x = resolve_local_group(&self.x_group, self.x_degree, "x")?;
        let y = resolve_local_group(&self.y_group, self.y_degree, "y")?;
        Ok((x, y))
    }
}

fn resolve_local_group(expression: &str, degree: usize, side: &str) -> Result<PermGroup> {
    let built = parse_group_expression(expression)?;
    if built.group().degree() != degree {
        return Err(Error::input(format!(
            "{side}_group {expression:?} acts on {} points but {side}_degree is {degree}",
            built.group().degree()
        )));
    }
    Ok(built.group().clone())
}

// ---------------------------------------------------------------------------
// Group expressions
// ---------------------------------------------------------------------------

/// Parses a group constructor expression; see the module documentation for
/// the grammar. The `description` of every named constructor's output parses
/// back to the same group.
pub fn parse_group_expression(text: &str) -> Result<BuiltGroup> {
    let mut parser = ExprParser { text, pos: 0 };
    let built = parser.expression()?;
    parser.skip_whitespace();
    if parser.pos != text.len() {
        return Err(Error::parse(parser.pos, "unexpected trailing input"));
    }
    Ok(built)
}

struct ExprParser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> ExprParser<'a> {
    fn skip_whitespace(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn expect(&mut self, wanted: char) -> Result<()> {
        self.skip_whitespace();
        match self.peek() {
            Some(c) if c == wanted => {
                self.pos += c.len_utf8();
                Ok(())
            }
            _ => Err(Error::parse(self.pos, format!("expected {wanted:?}"))),
        }
    }

    fn identifier(&mut self) -> Result<String> {
        self.skip_whitespace();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::parse(start, "expected a constructor name"));
        }
        Ok(self.text[start..self.pos].to_string())
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_whitespace();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::parse(start, "expected a number"));
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| Error::parse(start, "number out of range"))
    }

    fn expression(&mut self) -> Result<BuiltGroup> {
        self.skip_whitespace();
        let start = self.pos;
        let name = self.identifier()?;
        match name.as_str() {
            "symmetric" => BuiltGroup::symmetric(self.single_number()?),
            "cyclic" => BuiltGroup::cyclic(self.single_number()?),
            "psl2" => BuiltGroup::psl2(self.single_number()?),
            "pgl2" => BuiltGroup::pgl2(self.single_number()?),
            "trivial" => BuiltGroup::explicit(self.single_number()? as usize, Vec::new()),
            "direct_product" => {
                self.expect('(')?;
                let mut factors = vec![self.expression()?];
                loop {
                    self.skip_whitespace();
                    match self.peek() {
                        Some(',') => {
                            self.pos += 1;
                            factors.push(self.expression()?);
                        }
                        Some(')') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(Error::parse(self.pos, "expected ',' or ')'")),
                    }
                }
                BuiltGroup::product(factors)
            }
            "explicit" => self.explicit_arguments(),
            other => Err(Error::parse(
                start,
                format!(
                    "unknown constructor {other:?}; expected symmetric(n), cyclic(n), psl2(p), \
                     pgl2(p), trivial(n), direct_product(...), or explicit(...)"
                ),
            )),
        }
    }

    fn single_number(&mut self) -> Result<u64> {
        self.expect('(')?;
        let n = self.number()?;
        self.expect(')')?;
        Ok(n)
    }

    /// `explicit(degree, (cycles), ...)` or `explicit((cycles), ...)`; the
    /// degree defaults to the largest point mentioned.
    fn explicit_arguments(&mut self) -> Result<BuiltGroup> {
        self.expect('(')?;
        self.skip_whitespace();
        let declared_degree = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let degree = self.number()? as usize;
            self.skip_whitespace();
            if self.peek() == Some(',') {
                self.pos += 1;
            }
            Some(degree)
        } else {
            None
        };
        // Collect generator substrings: comma-separated runs of balanced
        // parenthesized cycles. Commas inside a cycle separate points, not
        // generators.
        let mut generator_texts: Vec<(usize, String)> = Vec::new();
        let mut current = String::new();
        let mut current_start = self.pos;
        let mut depth = 0usize;
        loop {
            let Some(c) = self.peek() else {
                return Err(Error::parse(self.pos, "unterminated explicit(...)"));
            };
            if c == ')' && depth == 0 {
                self.pos += 1;
                break;
            }
            match c {
                '(' => {
                    if current.is_empty() {
                        current_start = self.pos;
                    }
                    depth += 1;
                    current.push(c);
                }
                ')' => {
                    depth -= 1;
                    current.push(c);
                }
                ',' if depth == 0 => {
                    if current.is_empty() {
                        return Err(Error::parse(self.pos, "empty generator"));
                    }
                    generator_texts.push((current_start, std::mem::take(&mut current)));
                }
                // Whitespace between generators is noise; whitespace inside a
                // cycle separates points and must survive.
                _ if depth == 0 && c.is_whitespace() => {}
                _ => {
                    if current.is_empty() {
                        current_start = self.pos;
                    }
                    current.push(c);
                }
            }
            self.pos += c.len_utf8();
        }
        if !current.is_empty() {
            generator_texts.push((current_start, current));
        }
        let mut degree = declared_degree.unwrap_or(0);
        if declared_degree.is_none() {
            for (start, text) in &generator_texts {
                for token in text.split(|c: char| !c.is_ascii_digit()) {
                    if token.is_empty() {
                        continue;
                    }
                    let point: usize = token
                        .parse()
                        .map_err(|_| Error::parse(*start, "point out of range"))?;
                    degree = degree.max(point);
                }
            }
        }
        let mut generators = Vec::with_capacity(generator_texts.len());
        for (start, text) in &generator_texts {
            let p = Permutation::parse_cycles(text, degree).map_err(|e| match e {
                Error::Parse { position, message } => Error::parse(start + position, message),
                other => other,
            })?;
            generators.push(p);
        }
        BuiltGroup::explicit(degree, generators)
    }
}

// ---------------------------------------------------------------------------
// Search specs and generator words
// ---------------------------------------------------------------------------

/// Parses a subgroup search spec such as `"order=39 nonabelian count=3"`.
/// `order=` is required; `count` defaults to 3 and the kind to `any`.
pub fn parse_search_spec(text: &str) -> Result<SearchSpec> {
    let mut order: Option<u64> = None;
    let mut nonabelian = false;
    let mut count: usize = 3;
    let mut offset = 0;
    for (index, token) in text.split_whitespace().enumerate() {
        offset = text[offset..].find(token).map(|p| p + offset).unwrap_or(offset);
        let position = offset;
        offset += token.len();
        if index == 0 && token == "search" {
            continue;
        }
        match token {
            "nonabelian" => nonabelian = true,
            "any" => nonabelian = false,
            _ => match token.split_once('=') {
                Some(("order", v)) => {
                    order = Some(
                        v.parse().map_err(|_| Error::parse(position, "bad order value"))?,
                    );
                }
                Some(("count", v)) => {
                    count = v.parse().map_err(|_| Error::parse(position, "bad count value"))?;
                }
                _ => {
                    return Err(Error::parse(
                        position,
                        format!(
                            "unrecognized search token {token:?}; expected order=N, count=N, \
                             nonabelian, or any"
                        ),
                    ))
                }
            },
        }
    }
    let order = order.ok_or_else(|| Error::parse(0, "search spec needs order=N"))?;
    Ok(SearchSpec { order, nonabelian, count })
}

/// Parses one subgroup generator: cycle notation when the text starts with
/// `(`, otherwise a word `g1 g2^-1 ...` in the ambient group's generators
/// (1-based indices, applied left to right).
pub fn parse_generator_word(text: &str, group: &PermGroup) -> Result<Permutation> {
    let trimmed = text.trim();
    if trimmed.starts_with('(') {
        return Permutation::parse_cycles(trimmed, group.degree());
    }
    let generators = group.generators();
    let mut product = Permutation::identity(group.degree());
    let mut offset = 0;
    for token in trimmed.split_whitespace() {
        offset = trimmed[offset..].find(token).map(|p| p + offset).unwrap_or(offset);
        let position = offset;
        offset += token.len();
        let (name, exponent) = match token.split_once('^') {
            None => (token, 1i64),
            Some((name, e)) => (
                name,
                e.parse::<i64>()
                    .map_err(|_| Error::parse(position, format!("bad exponent in {token:?}")))?,
            ),
        };
        let index: usize = name
            .strip_prefix('g')
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| {
                Error::parse(position, format!("expected gK for a 1-based generator, got {token:?}"))
            })?;
        if index == 0 || index > generators.len() {
            return Err(Error::parse(
                position,
                format!("generator index {index} out of range 1..={}", generators.len()),
            ));
        }
        let base = &generators[index - 1];
        let factor = permutation_power(base, exponent);
        product = product.then(&factor);
    }
    Ok(product)
}

fn permutation_power(p: &Permutation, exponent: i64) -> Permutation {
    let base = if exponent < 0 { p.inverse() } else { p.clone() };
    let mut result = Permutation::identity(p.degree());
    for _ in 0..exponent.unsigned_abs() {
        result = result.then(&base);
    }
    result
}

// ---------------------------------------------------------------------------
// Named graphs
// ---------------------------------------------------------------------------

/// Builds one of the named graphs: `octahedron`, `path(n)`, `cycle(n)`,
/// `complete(n)`, or `empty(n)`.
pub fn parse_named_graph(text: &str) -> Result<Graph> {
    let trimmed = text.trim();
    if trimmed == "octahedron" {
        return Ok(Graph::octahedron());
    }
    let parsed = trimmed
        .strip_suffix(')')
        .and_then(|rest| rest.split_once('('))
        .and_then(|(name, arg)| arg.trim().parse::<usize>().ok().map(|n| (name.trim(), n)));
    match parsed {
        Some(("path", n)) => Ok(Graph::path(n)),
        Some(("cycle", n)) => Graph::cycle(n),
        Some(("complete", n)) => Ok(Graph::complete(n)),
        Some(("empty", n)) => Ok(Graph::new(n)),
        _ => Err(Error::input(format!(
            "unknown graph {trimmed:?}; expected octahedron, path(n), cycle(n), complete(n), \
             empty(n), or edges"
        ))),
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
