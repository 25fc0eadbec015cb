//! Line-based construction files.
//!
//! ```text
//! name G
//! copies 1
//! cusp a = (+,0,+,0) (+,0,-,0)
//! paircolor scope=all color=green map=-x,-y,-z,-w
//! paircolor scope=0 to=1 color=green map=x,y,z,w
//! pair 0:+x1 0:-x1 map=-x,-y,-z,-w
//! boundaryglue src=0 dst=1 seed_src=0:(+,+,+,-) seed_dst=0:(+,-,+,+) vertices=m1->b;m2->c;...
//! ```
//!
//! `#` starts a comment. Consecutive `pair` lines form one stage. The whole
//! text `preset:NAME` stands for a built-in construction.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::assembly::{preset, BoundaryGlue, ConstructionScript, CuspAlias, CuspRef, FacetRef, Pairing, Scope, Stage};
use crate::isometry::Isometry;
use crate::polytope::{Color, CuspLabel, FacetLabel};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token { text: &line[s..i], column: s + 1 });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &line[s..], column: s + 1 });
    }
    out
}

pub fn parse_construction(text: &str) -> Result<ConstructionScript, ParseError> {
    let trimmed = text.trim();
    if let Some(name) = trimmed.strip_prefix("preset:") {
        return preset(name.trim()).ok_or_else(|| ParseError {
            line: 1,
            column: 8,
            message: format!("unknown preset `{}`", name.trim()),
        });
    }
    let mut script = ConstructionScript::new(0);
    let mut copies_seen = false;
    let mut pending_pairs: Vec<Pairing> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokens(line);
        let Some(head) = toks.first() else { continue };
        let err = |t: &Token<'_>, message: String| ParseError { line: ln + 1, column: t.column, message };
        if head.text != "pair" && !pending_pairs.is_empty() {
            script.stages.push(Stage::PairExplicit(std::mem::take(&mut pending_pairs)));
        }
        match head.text {
            "name" => {
                let t = toks.get(1).ok_or_else(|| err(head, "missing name".into()))?;
                script.name = Some(t.text.to_string());
                expect_end(&toks, 2, ln)?;
            }
            "copies" => {
                let t = toks.get(1).ok_or_else(|| err(head, "missing copy count".into()))?;
                script.copies = t.text.parse().map_err(|_| err(t, format!("invalid copy count `{}`", t.text)))?;
                copies_seen = true;
                expect_end(&toks, 2, ln)?;
            }
            "cusp" => {
                let name = toks.get(1).ok_or_else(|| err(head, "missing cusp name".into()))?;
                match toks.get(2) {
                    Some(t) if t.text == "=" => {}
                    _ => return Err(err(name, "expected `=` after cusp name".into())),
                }
                let labels = toks[3..]
                    .iter()
                    .map(|t| t.text.parse::<CuspLabel>().map_err(|e| err(t, e)))
                    .collect::<Result<Vec<_>, _>>()?;
                if labels.is_empty() {
                    return Err(err(name, "cusp alias needs at least one label".into()));
                }
                script.cusps.push(CuspAlias { name: name.text.to_string(), labels });
            }
            "paircolor" => {
                let kv = key_values(&toks[1..], &["scope", "to", "color", "map"], ln)?;
                let scope = match required(&kv, "scope", head, ln)? {
                    (_, "all") => Scope::All,
                    (t, s) => Scope::Copy(s.parse().map_err(|_| err(t, format!("invalid scope `{s}`")))?),
                };
                let to = kv
                    .get("to")
                    .map(|(t, s)| s.parse::<usize>().map_err(|_| err(t, format!("invalid copy `{s}`"))))
                    .transpose()?;
                let (ct, c) = required(&kv, "color", head, ln)?;
                let color: Color = c.parse().map_err(|e: String| err(ct, e))?;
                let (mt, m) = required(&kv, "map", head, ln)?;
                let map = Isometry::from_mapspec(m).map_err(|e| err(mt, e.to_string()))?;
                script.stages.push(Stage::PairColor { scope, to, color, map });
            }
            "pair" => {
                let (Some(a), Some(b)) = (toks.get(1), toks.get(2)) else {
                    return Err(err(head, "expected two facets".into()));
                };
                let source = parse_facet_ref(a.text).map_err(|e| err(a, e))?;
                let target = parse_facet_ref(b.text).map_err(|e| err(b, e))?;
                let kv = key_values(&toks[3..], &["map"], ln)?;
                let (mt, m) = required(&kv, "map", head, ln)?;
                let map = Isometry::from_mapspec(m).map_err(|e| err(mt, e.to_string()))?;
                pending_pairs.push(Pairing::new(source, target, map));
            }
            "boundaryglue" => {
                let kv = key_values(&toks[1..], &["src", "dst", "seed_src", "seed_dst", "vertices"], ln)?;
                let index = |key: &str| -> Result<usize, ParseError> {
                    let (t, s) = required(&kv, key, head, ln)?;
                    s.parse().map_err(|_| err(t, format!("invalid component `{s}`")))
                };
                let facet = |key: &str| -> Result<FacetRef, ParseError> {
                    let (t, s) = required(&kv, key, head, ln)?;
                    parse_facet_ref(s).map_err(|e| err(t, e))
                };
                let (vt, v) = required(&kv, "vertices", head, ln)?;
                let vertices = v
                    .split(';')
                    .map(|pair| {
                        let (a, b) = pair.split_once("->").ok_or_else(|| err(vt, format!("expected `a->b`, found `{pair}`")))?;
                        Ok((parse_cusp_ref(a), parse_cusp_ref(b)))
                    })
                    .collect::<Result<Vec<_>, ParseError>>()?;
                script.stages.push(Stage::BoundaryGlue(BoundaryGlue {
                    src: index("src")?,
                    dst: index("dst")?,
                    seed_src: facet("seed_src")?,
                    seed_dst: facet("seed_dst")?,
                    vertices,
                }));
            }
            other => return Err(err(head, format!("unknown directive `{other}`"))),
        }
    }
    if !pending_pairs.is_empty() {
        script.stages.push(Stage::PairExplicit(pending_pairs));
    }
    if !copies_seen {
        return Err(ParseError { line: 1, column: 1, message: "missing `copies` line".into() });
    }
    Ok(script)
}

fn expect_end(toks: &[Token<'_>], n: usize, ln: usize) -> Result<(), ParseError> {
    match toks.get(n) {
        Some(t) => Err(ParseError { line: ln + 1, column: t.column, message: format!("unexpected `{}`", t.text) }),
        None => Ok(()),
    }
}

type KeyValues<'a, 'b> = BTreeMap<String, (&'b Token<'a>, &'a str)>;

fn key_values<'a, 'b>(toks: &'b [Token<'a>], allowed: &[&str], ln: usize) -> Result<KeyValues<'a, 'b>, ParseError> {
    let mut kv = BTreeMap::new();
    for t in toks {
        let err = |message: String| ParseError { line: ln + 1, column: t.column, message };
        let (k, v) = t.text.split_once('=').ok_or_else(|| err(format!("expected key=value, found `{}`", t.text)))?;
        if !allowed.contains(&k) {
            return Err(err(format!("unknown key `{k}`")));
        }
        if kv.insert(k.to_string(), (t, v)).is_some() {
            return Err(err(format!("duplicate key `{k}`")));
        }
    }
    Ok(kv)
}

fn required<'a, 'b>(
    kv: &KeyValues<'a, 'b>,
    key: &str,
    head: &Token<'_>,
    ln: usize,
) -> Result<(&'b Token<'a>, &'a str), ParseError> {
    kv.get(key).copied().ok_or_else(|| ParseError {
        line: ln + 1,
        column: head.column,
        message: format!("missing `{key}=`"),
    })
}

/// `copy:facet`, or just `facet` for copy 0.
fn parse_facet_ref(s: &str) -> Result<FacetRef, String> {
    let (copy, label) = match s.split_once(':') {
        Some((c, l)) => (c.parse::<usize>().map_err(|_| format!("invalid copy `{c}`"))?, l),
        None => (0, s),
    };
    Ok(FacetRef::new(copy, label.parse::<FacetLabel>()?))
}

fn parse_cusp_ref(s: &str) -> CuspRef {
    match s.parse::<CuspLabel>() {
        Ok(l) if s.starts_with('(') => CuspRef::Label(l),
        _ => CuspRef::Name(s.to_string()),
    }
}

/// Text that parses back to the same script, provided no two `pair`
/// stages are adjacent.
pub fn print_construction(script: &ConstructionScript) -> String {
    let mut out = String::new();
    if let Some(name) = &script.name {
        let _ = writeln!(out, "name {name}");
    }
    let _ = writeln!(out, "copies {}", script.copies);
    for alias in &script.cusps {
        let labels: Vec<String> = alias.labels.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "cusp {} = {}", alias.name, labels.join(" "));
    }
    for stage in &script.stages {
        match stage {
            Stage::PairColor { scope, to, color, map } => {
                let to = to.map(|t| format!(" to={t}")).unwrap_or_default();
                let _ = writeln!(out, "paircolor scope={scope}{to} color={color} map={map}");
            }
            Stage::PairExplicit(pairs) => {
                for p in pairs {
                    let _ = writeln!(out, "pair {} {} map={}", p.source, p.target, p.map);
                }
            }
            Stage::BoundaryGlue(g) => {
                let vertices: Vec<String> = g.vertices.iter().map(|(a, b)| format!("{a}->{b}")).collect();
                let _ = writeln!(
                    out,
                    "boundaryglue src={} dst={} seed_src={} seed_dst={} vertices={}",
                    g.src,
                    g.dst,
                    g.seed_src,
                    g.seed_dst,
                    vertices.join(";")
                );
            }
        }
    }
    out
}
