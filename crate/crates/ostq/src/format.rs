//! Plain-text line formats.
//!
//! Every producer emits deterministic bytes and every consumer reports
//! errors with 1-based line numbers. The formats:
//!
//! ```text
//! sts n=<n> b=<b> oriented=<0|1>     # then one `block a b c` per block;
//!                                    # oriented=1 lists points in cyclic order
//! quasigroup n=<n>                   # then n rows of n integers
//! extension q=<n> k=<m> kind=<..>    # then a quasigroup table of order n*m
//! ```
//!
//! A public key is an extension table followed by `k <...>` and `c <...>`
//! lines; a private key is a `privkey` header plus either an
//! `orientation <bitstring>` line (system variants) or embedded `Q`, `K`,
//! `f` and `g` tables (`kind=custom`). Messages and ciphertexts are
//! whitespace-separated integer indices.

use std::fmt::Write as _;

use thiserror::Error;

use ostq_core::cipher::{PrivateKey, PublicKey};
use ostq_core::extension::{
    AutomorphismAssignment, ExtensionKind, ExtensionTable, FactorSystem,
};
use ostq_core::quasigroup::CayleyTable;
use ostq_core::sts::{OrientedTripleSystem, TripleSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

/// Line cursor over the input, skipping blank lines, 1-based numbering.
struct Cursor<'a> {
    lines: std::iter::Enumerate<std::str::Lines<'a>>,
    peeked: Option<(usize, &'a str)>,
    last_line: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { lines: text.lines().enumerate(), peeked: None, last_line: 0 }
    }

    fn peek(&mut self) -> Option<(usize, &'a str)> {
        if self.peeked.is_none() {
            for (i, raw) in self.lines.by_ref() {
                let trimmed = raw.trim();
                if !trimmed.is_empty() {
                    self.peeked = Some((i + 1, trimmed));
                    break;
                }
            }
        }
        self.peeked
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let item = self.peek();
        self.peeked = None;
        if let Some((n, _)) = item {
            self.last_line = n;
        }
        item
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str), ParseError> {
        self.next()
            .ok_or_else(|| err(self.last_line + 1, format!("expected {what}, found end of input")))
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Some((n, line)) => Err(err(n, format!("unexpected trailing content: `{line}`"))),
            None => Ok(()),
        }
    }
}

/// Parses `key=value` fields after a fixed leading tag.
fn header_fields<'a>(
    line_no: usize,
    line: &'a str,
    tag: &str,
) -> Result<Vec<(&'a str, &'a str)>, ParseError> {
    let mut tokens = line.split_whitespace();
    match tokens.next() {
        Some(t) if t == tag => {}
        Some(t) => return Err(err(line_no, format!("expected `{tag}` header, found `{t}`"))),
        None => return Err(err(line_no, format!("expected `{tag}` header"))),
    }
    tokens
        .map(|t| {
            t.split_once('=')
                .ok_or_else(|| err(line_no, format!("malformed header field `{t}`")))
        })
        .collect()
}

fn field<'a>(
    line_no: usize,
    fields: &[(&'a str, &'a str)],
    name: &str,
) -> Result<&'a str, ParseError> {
    fields
        .iter()
        .find(|(k, _)| *k == name)
        .map(|(_, v)| *v)
        .ok_or_else(|| err(line_no, format!("missing header field `{name}`")))
}

fn parse_usize(line_no: usize, token: &str, what: &str) -> Result<usize, ParseError> {
    token
        .parse()
        .map_err(|_| err(line_no, format!("invalid {what}: `{token}`")))
}

// ---------------------------------------------------------------------------
// triple systems

pub fn write_system(ts: &TripleSystem) -> String {
    let mut out = String::new();
    writeln!(out, "sts n={} b={} oriented=0", ts.n(), ts.block_count()).unwrap();
    for b in ts.blocks() {
        writeln!(out, "block {} {} {}", b[0], b[1], b[2]).unwrap();
    }
    out
}

pub fn write_oriented_system(ots: &OrientedTripleSystem) -> String {
    let base = ots.base();
    let mut out = String::new();
    writeln!(out, "sts n={} b={} oriented=1", base.n(), base.block_count()).unwrap();
    for k in 0..base.block_count() {
        let [a, b, c] = ots.oriented_block(k);
        writeln!(out, "block {a} {b} {c}").unwrap();
    }
    out
}

/// A parsed system file, oriented or not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SystemFile {
    Plain(TripleSystem),
    Oriented(OrientedTripleSystem),
}

impl SystemFile {
    pub fn base(&self) -> &TripleSystem {
        match self {
            SystemFile::Plain(ts) => ts,
            SystemFile::Oriented(ots) => ots.base(),
        }
    }

    pub fn oriented(&self) -> Option<&OrientedTripleSystem> {
        match self {
            SystemFile::Plain(_) => None,
            SystemFile::Oriented(ots) => Some(ots),
        }
    }
}

pub fn parse_system(text: &str) -> Result<SystemFile, ParseError> {
    let mut cursor = Cursor::new(text);
    let file = parse_system_at(&mut cursor)?;
    cursor.expect_end()?;
    Ok(file)
}

fn parse_system_at(cursor: &mut Cursor<'_>) -> Result<SystemFile, ParseError> {
    let (header_no, header) = cursor.expect("`sts` header")?;
    let fields = header_fields(header_no, header, "sts")?;
    let n = parse_usize(header_no, field(header_no, &fields, "n")?, "point count")?;
    let b = parse_usize(header_no, field(header_no, &fields, "b")?, "block count")?;
    let oriented = match field(header_no, &fields, "oriented")? {
        "0" => false,
        "1" => true,
        other => return Err(err(header_no, format!("invalid oriented flag `{other}`"))),
    };

    let mut listed = Vec::with_capacity(b);
    for _ in 0..b {
        let (line_no, line) = cursor.expect("a `block` line")?;
        let mut tokens = line.split_whitespace();
        if tokens.next() != Some("block") {
            return Err(err(line_no, format!("expected `block a b c`, found `{line}`")));
        }
        let mut triple = [0usize; 3];
        for slot in &mut triple {
            let token = tokens
                .next()
                .ok_or_else(|| err(line_no, "block needs exactly three points"))?;
            *slot = parse_usize(line_no, token, "point")?;
        }
        if tokens.next().is_some() {
            return Err(err(line_no, "block needs exactly three points"));
        }
        listed.push((line_no, triple));
    }

    // canonical block order with the matching orientation bits
    let mut keyed: Vec<([usize; 3], bool)> = Vec::with_capacity(listed.len());
    for (line_no, triple) in &listed {
        let mut sorted = *triple;
        sorted.sort_unstable();
        let bit = if oriented {
            cyclic_bit(*line_no, *triple, sorted)?
        } else {
            false
        };
        keyed.push((sorted, bit));
    }
    keyed.sort_unstable();
    let blocks: Vec<[usize; 3]> = keyed.iter().map(|(t, _)| *t).collect();
    let ts = TripleSystem::new(n, blocks).map_err(|e| err(1, e.to_string()))?;
    if oriented {
        let bits: Vec<bool> = keyed.iter().map(|(_, bit)| *bit).collect();
        let ots = ts.orient(&bits).map_err(|e| err(1, e.to_string()))?;
        Ok(SystemFile::Oriented(ots))
    } else {
        Ok(SystemFile::Plain(ts))
    }
}

/// Orientation bit of a listed cyclic order relative to the sorted triple:
/// 0 for the class of `(a,b,c)`, 1 for `(a,c,b)`.
fn cyclic_bit(line_no: usize, listed: [usize; 3], sorted: [usize; 3]) -> Result<bool, ParseError> {
    let start = listed
        .iter()
        .position(|&p| p == sorted[0])
        .ok_or_else(|| err(line_no, "oriented block does not match its points"))?;
    let rotated = [listed[start], listed[(start + 1) % 3], listed[(start + 2) % 3]];
    if rotated == [sorted[0], sorted[1], sorted[2]] {
        Ok(false)
    } else if rotated == [sorted[0], sorted[2], sorted[1]] {
        Ok(true)
    } else {
        Err(err(line_no, "listed order is not a cyclic order of the block"))
    }
}

pub fn write_bits(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub fn parse_bits(text: &str) -> Result<Vec<bool>, ParseError> {
    text.trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(err(1, format!("invalid orientation bit `{other}`"))),
        })
        .collect()
}

// ---------------------------------------------------------------------------
// quasigroup and extension tables

pub fn write_quasigroup(t: &CayleyTable) -> String {
    let mut out = String::new();
    writeln!(out, "quasigroup n={}", t.order()).unwrap();
    for x in 0..t.order() {
        let row: Vec<String> = t.row(x).iter().map(usize::to_string).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

pub fn parse_quasigroup(text: &str) -> Result<CayleyTable, ParseError> {
    let mut cursor = Cursor::new(text);
    let t = parse_quasigroup_at(&mut cursor)?;
    cursor.expect_end()?;
    Ok(t)
}

fn parse_quasigroup_at(cursor: &mut Cursor<'_>) -> Result<CayleyTable, ParseError> {
    let (header_no, header) = cursor.expect("`quasigroup` header")?;
    let fields = header_fields(header_no, header, "quasigroup")?;
    let n = parse_usize(header_no, field(header_no, &fields, "n")?, "order")?;
    let mut cells = Vec::with_capacity(n * n);
    for row in 0..n {
        let (line_no, line) = cursor.expect(&format!("row {row} of the table"))?;
        let mut count = 0usize;
        for token in line.split_whitespace() {
            let v = parse_usize(line_no, token, "table entry")?;
            if v >= n {
                return Err(err(line_no, format!("entry {v} out of range for order {n}")));
            }
            cells.push(v);
            count += 1;
        }
        if count != n {
            return Err(err(line_no, format!("row has {count} entries, expected {n}")));
        }
    }
    Ok(CayleyTable::new(n, cells).expect("entries validated while parsing"))
}

pub fn write_extension(e: &ExtensionTable) -> String {
    let mut out = String::new();
    writeln!(out, "extension q={} k={} kind={}", e.q_order(), e.k_order(), e.kind()).unwrap();
    out.push_str(&write_quasigroup(e.table()));
    out
}

pub fn parse_extension(text: &str) -> Result<ExtensionTable, ParseError> {
    let mut cursor = Cursor::new(text);
    let e = parse_extension_at(&mut cursor)?;
    cursor.expect_end()?;
    Ok(e)
}

fn parse_extension_at(cursor: &mut Cursor<'_>) -> Result<ExtensionTable, ParseError> {
    let (header_no, header) = cursor.expect("`extension` header")?;
    let fields = header_fields(header_no, header, "extension")?;
    let q = parse_usize(header_no, field(header_no, &fields, "q")?, "q order")?;
    let k = parse_usize(header_no, field(header_no, &fields, "k")?, "k order")?;
    let kind: ExtensionKind = field(header_no, &fields, "kind")?
        .parse()
        .map_err(|()| err(header_no, "invalid kind (plus|minus|canonical|custom)"))?;
    let table = parse_quasigroup_at(cursor)?;
    ExtensionTable::from_parts(q, k, kind, table).map_err(|e| err(header_no, e.to_string()))
}

/// Either table format, distinguished by the header tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableFile {
    Plain(CayleyTable),
    Extension(ExtensionTable),
}

impl TableFile {
    pub fn table(&self) -> &CayleyTable {
        match self {
            TableFile::Plain(t) => t,
            TableFile::Extension(e) => e.table(),
        }
    }

    pub fn extension(&self) -> Option<&ExtensionTable> {
        match self {
            TableFile::Plain(_) => None,
            TableFile::Extension(e) => Some(e),
        }
    }
}

pub fn parse_table(text: &str) -> Result<TableFile, ParseError> {
    let mut cursor = Cursor::new(text);
    let (line_no, line) = cursor
        .peek()
        .ok_or_else(|| err(1, "empty input, expected a table"))?;
    let file = match line.split_whitespace().next() {
        Some("quasigroup") => TableFile::Plain(parse_quasigroup_at(&mut cursor)?),
        Some("extension") => TableFile::Extension(parse_extension_at(&mut cursor)?),
        other => {
            return Err(err(
                line_no,
                format!("expected `quasigroup` or `extension` header, found `{}`", other.unwrap_or("")),
            ))
        }
    };
    cursor.expect_end()?;
    Ok(file)
}

// ---------------------------------------------------------------------------
// key material

fn write_index_line(out: &mut String, tag: &str, indices: &[usize]) {
    out.push_str(tag);
    for v in indices {
        write!(out, " {v}").unwrap();
    }
    out.push('\n');
}

fn parse_index_line(line_no: usize, line: &str, tag: &str) -> Result<Vec<usize>, ParseError> {
    let mut tokens = line.split_whitespace();
    if tokens.next() != Some(tag) {
        return Err(err(line_no, format!("expected `{tag}` line, found `{line}`")));
    }
    tokens.map(|t| parse_usize(line_no, t, "index")).collect()
}

pub fn write_public_key(pk: &PublicKey) -> String {
    let mut out = write_extension(&pk.table);
    write_index_line(&mut out, "k", &pk.k_string);
    write_index_line(&mut out, "c", &pk.c_string);
    out
}

pub fn parse_public_key(text: &str) -> Result<PublicKey, ParseError> {
    let mut cursor = Cursor::new(text);
    let table = parse_extension_at(&mut cursor)?;
    let (kn, kline) = cursor.expect("`k` line")?;
    let k_string = parse_index_line(kn, kline, "k")?;
    let (cn, cline) = cursor.expect("`c` line")?;
    let c_string = parse_index_line(cn, cline, "c")?;
    cursor.expect_end()?;
    Ok(PublicKey { k_string, c_string, table })
}

pub fn write_private_key(sk: &PrivateKey) -> String {
    let mut out = String::new();
    match sk {
        PrivateKey::Sts { n, kind, orientation, seed } => {
            writeln!(out, "privkey kind={kind} n={n} seed={seed}").unwrap();
            writeln!(out, "orientation {}", write_bits(orientation)).unwrap();
        }
        PrivateKey::General { q, k, f, g } => {
            writeln!(out, "privkey kind=custom").unwrap();
            out.push_str(&write_quasigroup(q));
            out.push_str(&write_quasigroup(k));
            writeln!(out, "f").unwrap();
            for a in 0..f.q_order() {
                let row: Vec<String> =
                    (0..f.q_order()).map(|b| f.get(a, b).to_string()).collect();
                writeln!(out, "{}", row.join(" ")).unwrap();
            }
            writeln!(out, "g").unwrap();
            for b in 0..g.q_order() {
                let row: Vec<String> = g.map_of(b).iter().map(usize::to_string).collect();
                writeln!(out, "{}", row.join(" ")).unwrap();
            }
        }
    }
    out
}

pub fn parse_private_key(text: &str) -> Result<PrivateKey, ParseError> {
    let mut cursor = Cursor::new(text);
    let (header_no, header) = cursor.expect("`privkey` header")?;
    let fields = header_fields(header_no, header, "privkey")?;
    let kind: ExtensionKind = field(header_no, &fields, "kind")?
        .parse()
        .map_err(|()| err(header_no, "invalid kind (plus|minus|canonical|custom)"))?;

    if kind == ExtensionKind::Custom {
        let q = parse_quasigroup_at(&mut cursor)?;
        let k = parse_quasigroup_at(&mut cursor)?;
        let (fn_, fline) = cursor.expect("`f` marker")?;
        if fline != "f" {
            return Err(err(fn_, format!("expected `f` marker, found `{fline}`")));
        }
        let mut values = Vec::with_capacity(q.order() * q.order());
        for _ in 0..q.order() {
            let (line_no, line) = cursor.expect("a factor-system row")?;
            let row: Vec<usize> = line
                .split_whitespace()
                .map(|t| parse_usize(line_no, t, "factor value"))
                .collect::<Result<_, _>>()?;
            if row.len() != q.order() {
                return Err(err(line_no, format!("row has {} entries, expected {}", row.len(), q.order())));
            }
            values.extend(row);
        }
        let f = FactorSystem::new(q.order(), k.order(), values)
            .map_err(|e| err(header_no, e.to_string()))?;
        let (gn, gline) = cursor.expect("`g` marker")?;
        if gline != "g" {
            return Err(err(gn, format!("expected `g` marker, found `{gline}`")));
        }
        let mut maps = Vec::with_capacity(q.order());
        for _ in 0..q.order() {
            let (line_no, line) = cursor.expect("an automorphism row")?;
            let row: Vec<usize> = line
                .split_whitespace()
                .map(|t| parse_usize(line_no, t, "permutation image"))
                .collect::<Result<_, _>>()?;
            if row.len() != k.order() {
                return Err(err(line_no, format!("row has {} entries, expected {}", row.len(), k.order())));
            }
            maps.push(row);
        }
        let g = AutomorphismAssignment::new(k.order(), maps)
            .map_err(|e| err(header_no, e.to_string()))?;
        cursor.expect_end()?;
        return Ok(PrivateKey::General { q, k, f, g });
    }

    let n = parse_usize(header_no, field(header_no, &fields, "n")?, "point count")?;
    let seed: u64 = {
        let token = field(header_no, &fields, "seed")?;
        token
            .parse()
            .map_err(|_| err(header_no, format!("invalid seed `{token}`")))?
    };
    let (line_no, line) = cursor.expect("`orientation` line")?;
    let rest = line
        .strip_prefix("orientation")
        .ok_or_else(|| err(line_no, format!("expected `orientation <bits>`, found `{line}`")))?;
    let orientation = parse_bits(rest).map_err(|e| err(line_no, e.message))?;
    cursor.expect_end()?;
    Ok(PrivateKey::Sts { n, kind, orientation, seed })
}

// ---------------------------------------------------------------------------
// messages and ciphertexts

pub fn write_indices(indices: &[usize]) -> String {
    let mut out = indices
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    out.push('\n');
    out
}

pub fn parse_indices(text: &str) -> Result<Vec<usize>, ParseError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        for token in line.split_whitespace() {
            out.push(parse_usize(i + 1, token, "index")?);
        }
    }
    Ok(out)
}
