//! MMP diagrams: the core hypergraph type, its line-oriented text format,
//! and validation against the three MMP conditions.
//!
//! Text format, one diagram per line:
//!
//! * character format: each block is a run of single-character vertex
//!   labels, blocks are joined by `,`, the line ends with `.`:
//!   `abc,cde,efa,egb,dgf.`  Labels are drawn, in order, from
//!   `a`-`z`, `A`-`Z`, `1`-`9`, `0` (62 labels).
//! * numeric format (needed past 62 vertices): blocks are space-separated
//!   1-based integers, blocks joined by `,`, line ends with `.`:
//!   `1 2 3,3 4 5.`
//!
//! Vertices are numbered by first appearance of their label; block order is
//! preserved. Lines starting with `#` are comments at the file level and are
//! not accepted by [`MmpDiagram::parse`], which takes a single diagram line.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

/// Ordered label alphabet for the character format: a-z, A-Z, 1-9, 0.
pub const ALPHABET: [char; 62] = [
    'a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'i', 'j', 'k', 'l', 'm', 'n', 'o', 'p', 'q', 'r', 's',
    't', 'u', 'v', 'w', 'x', 'y', 'z', 'A', 'B', 'C', 'D', 'E', 'F', 'G', 'H', 'I', 'J', 'K', 'L',
    'M', 'N', 'O', 'P', 'Q', 'R', 'S', 'T', 'U', 'V', 'W', 'X', 'Y', 'Z', '1', '2', '3', '4', '5',
    '6', '7', '8', '9', '0',
];

/// Index of a character in [`ALPHABET`], if it is a valid vertex label.
pub fn label_index(c: char) -> Option<usize> {
    match c {
        'a'..='z' => Some(c as usize - 'a' as usize),
        'A'..='Z' => Some(26 + c as usize - 'A' as usize),
        '1'..='9' => Some(52 + c as usize - '1' as usize),
        '0' => Some(61),
        _ => None,
    }
}

/// A hypergraph of vertices grouped into blocks of mutually orthogonal atoms.
///
/// Immutable after construction; all operations on it are pure.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MmpDiagram {
    vertex_count: usize,
    blocks: Vec<Vec<usize>>,
}

/// Structural errors raised by [`MmpDiagram::new`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("block {block} refers to vertex {vertex} but vertex_count is {vertex_count}")]
    VertexOutOfRange {
        block: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("block {block} contains vertex {vertex} more than once")]
    DuplicateVertexInBlock { block: usize, vertex: usize },
}

/// Errors raised while parsing a diagram line, with the byte offset of the
/// offending character.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("missing terminating period at byte {offset}")]
    MissingPeriod { offset: usize },
    #[error("empty block at byte {offset}")]
    EmptyBlock { offset: usize },
    #[error("character {character:?} at byte {offset} is not a vertex label")]
    UnknownCharacter { character: char, offset: usize },
    #[error("vertex {label:?} repeated within a block at byte {offset}")]
    DuplicateVertex { label: String, offset: usize },
    #[error("unexpected content after the period at byte {offset}")]
    TrailingContent { offset: usize },
    #[error("invalid vertex number {token:?} at byte {offset}")]
    BadNumber { token: String, offset: usize },
}

impl MmpDiagram {
    /// Builds a diagram from raw parts, checking only structural invariants
    /// (vertex indices in range, no repeats within a block). The MMP
    /// conditions themselves are checked by [`MmpDiagram::validate`].
    pub fn new(vertex_count: usize, blocks: Vec<Vec<usize>>) -> Result<Self, DiagramError> {
        for (bi, block) in blocks.iter().enumerate() {
            let mut seen = HashSet::new();
            for &v in block {
                if v >= vertex_count {
                    return Err(DiagramError::VertexOutOfRange {
                        block: bi,
                        vertex: v,
                        vertex_count,
                    });
                }
                if !seen.insert(v) {
                    return Err(DiagramError::DuplicateVertexInBlock { block: bi, vertex: v });
                }
            }
        }
        Ok(MmpDiagram { vertex_count, blocks })
    }

    /// The empty diagram: no vertices, no blocks. Serializes as `"."`.
    pub fn empty() -> Self {
        MmpDiagram { vertex_count: 0, blocks: Vec::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Parses one diagram line in either the character or the numeric
    /// format. The numeric format is recognized by whitespace between
    /// vertex tokens; a line without internal whitespace is read as
    /// character labels.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let period = text
            .find('.')
            .ok_or(ParseError::MissingPeriod { offset: text.len() })?;
        let body = &text[..period];
        for (i, c) in text[period + 1..].char_indices() {
            if !c.is_whitespace() {
                return Err(ParseError::TrailingContent { offset: period + 1 + i });
            }
        }
        if body.chars().any(|c| c.is_whitespace()) {
            Self::parse_numeric_body(body)
        } else {
            Self::parse_char_body(body)
        }
    }

    fn parse_char_body(body: &str) -> Result<Self, ParseError> {
        if body.is_empty() {
            return Ok(Self::empty());
        }
        let mut vertex_of_label: Vec<Option<usize>> = vec![None; 62];
        let mut vertex_count = 0usize;
        let mut blocks = Vec::new();
        let mut block: Vec<usize> = Vec::new();
        let mut block_start = 0usize;
        for (offset, c) in body.char_indices() {
            if c == ',' {
                if block.is_empty() {
                    return Err(ParseError::EmptyBlock { offset: block_start });
                }
                blocks.push(std::mem::take(&mut block));
                block_start = offset + 1;
                continue;
            }
            let li = label_index(c).ok_or(ParseError::UnknownCharacter { character: c, offset })?;
            let v = *vertex_of_label[li].get_or_insert_with(|| {
                let v = vertex_count;
                vertex_count += 1;
                v
            });
            if block.contains(&v) {
                return Err(ParseError::DuplicateVertex { label: c.to_string(), offset });
            }
            block.push(v);
        }
        if block.is_empty() {
            return Err(ParseError::EmptyBlock { offset: block_start });
        }
        blocks.push(block);
        Ok(MmpDiagram { vertex_count, blocks })
    }

    fn parse_numeric_body(body: &str) -> Result<Self, ParseError> {
        let mut label_to_vertex: Vec<(u64, usize)> = Vec::new();
        let mut vertex_count = 0usize;
        let mut blocks = Vec::new();
        let mut offset = 0usize;
        for raw_block in body.split(',') {
            let mut block: Vec<usize> = Vec::new();
            let mut tok_start = offset;
            let mut push_token = |tok: &str, at: usize, block: &mut Vec<usize>| {
                let n: u64 = tok
                    .parse()
                    .ok()
                    .filter(|&n| n >= 1)
                    .ok_or(ParseError::BadNumber { token: tok.to_string(), offset: at })?;
                let v = match label_to_vertex.iter().find(|(l, _)| *l == n) {
                    Some(&(_, v)) => v,
                    None => {
                        let v = vertex_count;
                        vertex_count += 1;
                        label_to_vertex.push((n, v));
                        v
                    }
                };
                if block.contains(&v) {
                    return Err(ParseError::DuplicateVertex { label: tok.to_string(), offset: at });
                }
                block.push(v);
                Ok(())
            };
            let mut in_tok = false;
            for (i, c) in raw_block.char_indices() {
                if c.is_whitespace() {
                    if in_tok {
                        push_token(&raw_block[tok_start - offset..i], tok_start, &mut block)?;
                        in_tok = false;
                    }
                } else if !in_tok {
                    tok_start = offset + i;
                    in_tok = true;
                }
            }
            if in_tok {
                push_token(&raw_block[tok_start - offset..], tok_start, &mut block)?;
            }
            if block.is_empty() {
                return Err(ParseError::EmptyBlock { offset });
            }
            blocks.push(block);
            offset += raw_block.len() + 1;
        }
        Ok(MmpDiagram { vertex_count, blocks })
    }

    /// Serializes to one diagram line: character format while the diagram
    /// fits in the 62-label alphabet, numeric format beyond that.
    pub fn to_line(&self) -> String {
        if self.vertex_count <= ALPHABET.len() {
            self.to_char_line()
        } else {
            self.to_numeric_line()
        }
    }

    fn to_char_line(&self) -> String {
        let mut out = String::new();
        for (bi, block) in self.blocks.iter().enumerate() {
            if bi > 0 {
                out.push(',');
            }
            for &v in block {
                out.push(ALPHABET[v]);
            }
        }
        out.push('.');
        out
    }

    /// Numeric-format line (`1 2 3,3 4 5.`), valid for any vertex count.
    pub fn to_numeric_line(&self) -> String {
        let mut out = String::new();
        for (bi, block) in self.blocks.iter().enumerate() {
            if bi > 0 {
                out.push(',');
            }
            for (vi, &v) in block.iter().enumerate() {
                if vi > 0 {
                    out.push(' ');
                }
                out.push_str(&(v + 1).to_string());
            }
        }
        out.push('.');
        out
    }

    /// Printable label of a vertex: an alphabet character for diagrams with
    /// at most 62 vertices, the 1-based vertex number otherwise.
    pub fn vertex_label(&self, v: usize) -> String {
        if self.vertex_count <= ALPHABET.len() {
            ALPHABET[v].to_string()
        } else {
            (v + 1).to_string()
        }
    }

    /// Resolves a label produced by [`MmpDiagram::vertex_label`] back to a
    /// vertex index.
    pub fn label_to_vertex(&self, label: &str) -> Option<usize> {
        if self.vertex_count <= ALPHABET.len() {
            let mut chars = label.chars();
            let c = chars.next()?;
            if chars.next().is_some() {
                return None;
            }
            label_index(c).filter(|&v| v < self.vertex_count)
        } else {
            label
                .parse::<usize>()
                .ok()
                .filter(|&n| n >= 1 && n <= self.vertex_count)
                .map(|n| n - 1)
        }
    }

    /// For each vertex, the indices of the blocks containing it.
    pub fn vertex_blocks(&self) -> Vec<Vec<usize>> {
        let mut vb = vec![Vec::new(); self.vertex_count];
        for (bi, block) in self.blocks.iter().enumerate() {
            for &v in block {
                vb[v].push(bi);
            }
        }
        vb
    }

    /// Vertices sharing at least one block with `v`, deduplicated.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut seen = vec![false; self.vertex_count];
        let mut out = Vec::new();
        for block in &self.blocks {
            if block.contains(&v) {
                for &w in block {
                    if w != v && !seen[w] {
                        seen[w] = true;
                        out.push(w);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// True when every pair of vertices is linked through shared blocks.
    /// The empty diagram counts as connected.
    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for block in &self.blocks {
                if block.contains(&v) {
                    for &w in block {
                        if !seen[w] {
                            seen[w] = true;
                            reached += 1;
                            stack.push(w);
                        }
                    }
                }
            }
        }
        reached == self.vertex_count
    }

    /// Checks the three MMP conditions, plus degenerate-input warnings
    /// (duplicate blocks). Violations and warnings are reported, never
    /// thrown; `passed` reflects violations only.
    pub fn validate(&self) -> ValidationReport {
        self.validate_with(&ValidateOptions::default())
    }

    /// Like [`MmpDiagram::validate`], optionally adding Greechie-style
    /// warnings (block overlaps of two or more vertices, loops of order
    /// less than five). Those are warnings, never MMP violations.
    pub fn validate_with(&self, opts: &ValidateOptions) -> ValidationReport {
        let mut violations = Vec::new();
        let mut warnings = Vec::new();

        let mut in_block = vec![false; self.vertex_count];
        for block in &self.blocks {
            for &v in block {
                in_block[v] = true;
            }
        }
        for (v, &covered) in in_block.iter().enumerate() {
            if !covered {
                violations.push(Violation::UncoveredVertex { vertex: v });
            }
        }

        if self.vertex_count >= 2 {
            for (bi, block) in self.blocks.iter().enumerate() {
                if block.len() < 2 {
                    violations.push(Violation::ShortBlock { block: bi, size: block.len() });
                }
            }
        }

        let sets: Vec<HashSet<usize>> = self
            .blocks
            .iter()
            .map(|b| b.iter().copied().collect())
            .collect();
        for i in 0..self.blocks.len() {
            for j in i + 1..self.blocks.len() {
                let shared: Vec<usize> = sets[i].intersection(&sets[j]).copied().collect();
                if shared.is_empty() {
                    continue;
                }
                if sets[i] == sets[j] {
                    warnings.push(Warning::DuplicateBlock { block_a: i, block_b: j });
                    continue;
                }
                if self.blocks[i].len() < 3 || self.blocks[j].len() < 3 {
                    violations.push(Violation::IntersectingThinBlocks { block_a: i, block_b: j });
                }
                if opts.greechie && shared.len() >= 2 {
                    let mut shared = shared;
                    shared.sort_unstable();
                    warnings.push(Warning::BlockOverlap { block_a: i, block_b: j, shared });
                }
            }
        }

        if opts.greechie {
            self.short_loop_warnings(&sets, &mut warnings);
        }

        ValidationReport { violations, warnings }
    }

    /// Loops of order 3 and 4 in the block-intersection structure:
    /// cyclically adjacent blocks intersect, non-adjacent ones do not.
    fn short_loop_warnings(&self, sets: &[HashSet<usize>], warnings: &mut Vec<Warning>) {
        let n = sets.len();
        let meets = |i: usize, j: usize| !sets[i].is_disjoint(&sets[j]);
        for i in 0..n {
            for j in i + 1..n {
                if !meets(i, j) {
                    continue;
                }
                for k in j + 1..n {
                    if meets(j, k) && meets(k, i) {
                        warnings.push(Warning::ShortLoop { order: 3, blocks: vec![i, j, k] });
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in k + 1..n {
                        // the three cyclic orders of {i,j,k,l} up to rotation/reflection
                        for cycle in [[i, j, k, l], [i, j, l, k], [i, k, j, l]] {
                            let adj = (0..4).all(|t| meets(cycle[t], cycle[(t + 1) % 4]));
                            let chords =
                                meets(cycle[0], cycle[2]) || meets(cycle[1], cycle[3]);
                            if adj && !chords {
                                warnings.push(Warning::ShortLoop {
                                    order: 4,
                                    blocks: cycle.to_vec(),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
}

impl fmt::Debug for MmpDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MmpDiagram({:?}, n={})", self.to_line(), self.vertex_count)
    }
}

impl fmt::Display for MmpDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

impl std::str::FromStr for MmpDiagram {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MmpDiagram::parse(s)
    }
}

/// Options for [`MmpDiagram::validate_with`].
#[derive(Debug, Default, Clone)]
pub struct ValidateOptions {
    /// Also report Greechie-style warnings (overlaps of two or more shared
    /// vertices, loops of order 3 or 4).
    pub greechie: bool,
}

/// One violated MMP condition with its witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Condition 1: the vertex belongs to no block.
    UncoveredVertex { vertex: usize },
    /// Condition 2: a block of fewer than two vertices in a diagram with
    /// at least two vertices.
    ShortBlock { block: usize, size: usize },
    /// Condition 3: two intersecting blocks of which at least one has
    /// fewer than three vertices.
    IntersectingThinBlocks { block_a: usize, block_b: usize },
}

/// Degenerate-input and Greechie-style advisories; never MMP violations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Warning {
    DuplicateBlock { block_a: usize, block_b: usize },
    BlockOverlap { block_a: usize, block_b: usize, shared: Vec<usize> },
    ShortLoop { order: usize, blocks: Vec<usize> },
}

/// Outcome of [`MmpDiagram::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Warning>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> MmpDiagram {
        MmpDiagram::parse(s).unwrap()
    }

    #[test]
    fn parses_paper_seven_vertex_diagram() {
        let d = parse("abc,cde,efa,egb,dgf.");
        assert_eq!(d.vertex_count(), 7);
        assert_eq!(d.block_count(), 5);
        assert!(d.blocks().iter().all(|b| b.len() == 3));
    }

    #[test]
    fn parses_single_block() {
        let d = parse("abc.");
        assert_eq!(d.vertex_count(), 3);
        assert_eq!(d.blocks(), &[vec![0, 1, 2]]);
    }

    #[test]
    fn parses_eighteen_nine() {
        let d = parse("abcd,defg,ghij,jklm,mnop,pqra,bikr,celn,fhoq.");
        assert_eq!(d.vertex_count(), 18);
        assert_eq!(d.block_count(), 9);
        assert!(d.blocks().iter().all(|b| b.len() == 4));
    }

    #[test]
    fn numbers_vertices_by_first_appearance() {
        let d = parse("cab,bde.");
        // c=0, a=1, b=2, d=3, e=4
        assert_eq!(d.blocks(), &[vec![0, 1, 2], vec![2, 3, 4]]);
    }

    #[test]
    fn parses_numeric_format() {
        let d = parse("1 2 3,3 4 5.");
        assert_eq!(d.vertex_count(), 5);
        assert_eq!(d.blocks(), &[vec![0, 1, 2], vec![2, 3, 4]]);
        // labels are renumbered by first appearance
        let e = parse("7 9 8,8 2 4.");
        assert_eq!(e.blocks(), &[vec![0, 1, 2], vec![2, 3, 4]]);
    }

    #[test]
    fn parse_errors_carry_offsets() {
        assert_eq!(
            MmpDiagram::parse("abc"),
            Err(ParseError::MissingPeriod { offset: 3 })
        );
        assert_eq!(
            MmpDiagram::parse("ab,,cd."),
            Err(ParseError::EmptyBlock { offset: 3 })
        );
        assert_eq!(
            MmpDiagram::parse("aba."),
            Err(ParseError::DuplicateVertex { label: "a".into(), offset: 2 })
        );
        assert_eq!(
            MmpDiagram::parse("a$b."),
            Err(ParseError::UnknownCharacter { character: '$', offset: 1 })
        );
        assert_eq!(
            MmpDiagram::parse("abc. x"),
            Err(ParseError::TrailingContent { offset: 5 })
        );
        assert_eq!(
            MmpDiagram::parse("1 0 3."),
            Err(ParseError::BadNumber { token: "0".into(), offset: 2 })
        );
    }

    #[test]
    fn empty_diagram_round_trips() {
        let d = parse(".");
        assert_eq!(d.vertex_count(), 0);
        assert_eq!(d.block_count(), 0);
        assert_eq!(d.to_line(), ".");
    }

    #[test]
    fn serializes_char_format() {
        assert_eq!(parse("abc,cde,efa,egb,dgf.").to_line(), "abc,cde,efa,egb,dgf.");
        assert_eq!(parse("abc.").to_line(), "abc.");
    }

    #[test]
    fn serializes_numeric_past_alphabet() {
        // 63 vertices: 31 blocks of 3 chained on shared vertices would be
        // elaborate; a block list covering 63 fresh vertices is enough here.
        let blocks: Vec<Vec<usize>> = (0..21).map(|i| vec![3 * i, 3 * i + 1, 3 * i + 2]).collect();
        let d = MmpDiagram::new(63, blocks).unwrap();
        let line = d.to_line();
        assert!(line.starts_with("1 2 3,"));
        assert_eq!(MmpDiagram::parse(&line).unwrap(), d);
    }

    #[test]
    fn validate_accepts_basic_diagrams() {
        assert!(parse("abc,cde.").validate().passed());
        assert!(parse("abc,cde,efa,egb,dgf.").validate().passed());
        // a single 1-vertex block: condition 2 only applies from 2 vertices
        assert!(parse("a.").validate().passed());
        assert!(parse("ab.").validate().passed());
        // disjoint 2-blocks never trigger condition 3
        assert!(parse("ab,cd.").validate().passed());
    }

    #[test]
    fn validate_flags_condition_3() {
        let report = parse("ab,bc.").validate();
        assert!(!report.passed());
        assert_eq!(
            report.violations,
            vec![Violation::IntersectingThinBlocks { block_a: 0, block_b: 1 }]
        );
    }

    #[test]
    fn validate_flags_condition_1_and_2() {
        let d = MmpDiagram::new(3, vec![vec![0], vec![1]]).unwrap();
        let report = d.validate();
        assert!(report.violations.contains(&Violation::UncoveredVertex { vertex: 2 }));
        assert!(report.violations.contains(&Violation::ShortBlock { block: 0, size: 1 }));
    }

    #[test]
    fn duplicate_blocks_warn_but_pass() {
        let d = MmpDiagram::new(3, vec![vec![0, 1, 2], vec![2, 1, 0]]).unwrap();
        let report = d.validate();
        assert!(report.passed());
        assert_eq!(report.warnings, vec![Warning::DuplicateBlock { block_a: 0, block_b: 1 }]);
    }

    #[test]
    fn greechie_warnings_are_opt_in() {
        let d = parse("abcd,cdef.");
        assert!(d.validate().warnings.is_empty());
        let report = d.validate_with(&ValidateOptions { greechie: true });
        assert_eq!(
            report.warnings,
            vec![Warning::BlockOverlap { block_a: 0, block_b: 1, shared: vec![2, 3] }]
        );
        assert!(report.passed());
    }

    #[test]
    fn triangle_loop_is_warned() {
        let d = parse("abc,cde,efa.");
        let report = d.validate_with(&ValidateOptions { greechie: true });
        assert!(report
            .warnings
            .iter()
            .any(|w| matches!(w, Warning::ShortLoop { order: 3, .. })));
    }

    #[test]
    fn connectivity() {
        assert!(parse("abc,cde.").is_connected());
        assert!(!parse("abc,def.").is_connected());
        assert!(MmpDiagram::empty().is_connected());
    }

    #[test]
    fn labels_round_trip() {
        let d = parse("abc,cde.");
        for v in 0..d.vertex_count() {
            assert_eq!(d.label_to_vertex(&d.vertex_label(v)), Some(v));
        }
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(
            MmpDiagram::new(2, vec![vec![0, 2]]),
            Err(DiagramError::VertexOutOfRange { .. })
        ));
        assert!(matches!(
            MmpDiagram::new(2, vec![vec![0, 0]]),
            Err(DiagramError::DuplicateVertexInBlock { .. })
        ));
    }
}
