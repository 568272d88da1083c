//! The input grammar: `.sys` symbol-system documents and `.ideal` raw
//! ideal documents, plus canonical printers.
//!
//! A document is a `vars:` line followed by sections. Symbol-system
//! documents use `F<k>:` sections (k >= 2) holding comma- or
//! semicolon-separated polynomial expressions; ideal documents use a
//! single `gens:` section. `name:` is optional metadata and `#` starts a
//! line comment. Documents are whitespace-insensitive apart from section
//! headers starting a line.
//!
//! Expressions allow integer and rational literals (`p/q`), declared
//! variable names, `+ - * ^` and parentheses. Implicit multiplication is
//! not accepted, and `/` only forms rational literals.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Rational, Ring};
use crate::symbol::SymbolSystem;

#[derive(Clone, Debug, PartialEq)]
pub struct SymbolSystemDocument {
    pub name: Option<String>,
    pub ring: Ring,
    pub sections: BTreeMap<u32, Vec<Polynomial>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdealDocument {
    pub name: Option<String>,
    pub ring: Ring,
    pub generators: Vec<Polynomial>,
}

impl SymbolSystemDocument {
    pub fn parse(text: &str) -> Result<SymbolSystemDocument> {
        let raw = parse_raw(text)?;
        let ring = raw.ring()?;
        let mut sections = BTreeMap::new();
        for section in &raw.sections {
            let degree = match &section.kind {
                SectionKind::Component(k) => *k,
                SectionKind::Gens => {
                    return Err(Error::parse(
                        section.line,
                        1,
                        "`gens:` belongs to ideal documents; use F<k> sections here",
                    ))
                }
            };
            let polys = section.parse_exprs(&ring)?;
            for (poly, (line, col)) in &polys {
                if !poly.is_zero() && poly.homogeneous_degree() != Some(degree) {
                    return Err(Error::parse(
                        *line,
                        *col,
                        format!("generator is not homogeneous of degree {degree}"),
                    ));
                }
            }
            sections.insert(degree, polys.into_iter().map(|(p, _)| p).collect());
        }
        Ok(SymbolSystemDocument {
            name: raw.name,
            ring,
            sections,
        })
    }

    pub fn to_system(&self) -> Result<SymbolSystem> {
        SymbolSystem::new(self.ring.clone(), self.sections.clone())
    }

    /// Canonical text form; parsing it back yields an equal document.
    pub fn print(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            out.push_str(&format!("name: {name}\n"));
        }
        out.push_str(&format!("vars: {}\n", self.ring.vars().join(", ")));
        for (k, polys) in &self.sections {
            let exprs: Vec<String> = polys.iter().map(|p| p.to_string()).collect();
            out.push_str(&format!("F{k}: {}\n", exprs.join("; ")));
        }
        out
    }
}

impl IdealDocument {
    pub fn parse(text: &str) -> Result<IdealDocument> {
        let raw = parse_raw(text)?;
        let ring = raw.ring()?;
        let mut generators = None;
        for section in &raw.sections {
            match &section.kind {
                SectionKind::Gens => {
                    let polys = section.parse_exprs(&ring)?;
                    generators = Some(polys.into_iter().map(|(p, _)| p).collect());
                }
                SectionKind::Component(_) => {
                    return Err(Error::parse(
                        section.line,
                        1,
                        "F<k> sections belong to symbol-system documents; use `gens:` here",
                    ))
                }
            }
        }
        let generators =
            generators.ok_or_else(|| Error::parse(raw.last_line, 1, "missing `gens:` section"))?;
        Ok(IdealDocument {
            name: raw.name,
            ring,
            generators,
        })
    }

    pub fn print(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            out.push_str(&format!("name: {name}\n"));
        }
        out.push_str(&format!("vars: {}\n", self.ring.vars().join(", ")));
        let exprs: Vec<String> = self.generators.iter().map(|p| p.to_string()).collect();
        out.push_str(&format!("gens: {}\n", exprs.join("; ")));
        out
    }
}

/// Parse a single polynomial expression in an existing ring. Used by
/// tests and the bindings; the document parsers share the same grammar.
pub fn parse_polynomial(ring: &Ring, text: &str) -> Result<Polynomial> {
    let tokens = lex(&[Chunk {
        line: 1,
        col: 1,
        text: text.to_string(),
    }])?;
    if tokens.is_empty() {
        return Err(Error::parse(1, 1, "empty expression"));
    }
    let mut parser = ExprParser {
        ring,
        tokens: &tokens,
        pos: 0,
    };
    let poly = parser.parse_expr()?;
    if parser.pos != tokens.len() {
        let t = &tokens[parser.pos];
        return Err(Error::parse(
            t.line,
            t.col,
            format!("unexpected `{}`", t.kind),
        ));
    }
    Ok(poly)
}

// ---------------------------------------------------------------------------
// raw sectioning
// ---------------------------------------------------------------------------

#[derive(Debug)]
enum SectionKind {
    Component(u32),
    Gens,
}

#[derive(Debug)]
struct RawSection {
    kind: SectionKind,
    line: usize,
    chunks: Vec<Chunk>,
}

#[derive(Debug, Clone)]
struct Chunk {
    line: usize,
    col: usize,
    text: String,
}

struct RawDocument {
    name: Option<String>,
    vars_chunks: Option<(usize, Vec<Chunk>)>,
    sections: Vec<RawSection>,
    last_line: usize,
}

impl RawDocument {
    fn ring(&self) -> Result<Ring> {
        let (line, chunks) = self
            .vars_chunks
            .as_ref()
            .ok_or_else(|| Error::parse(self.last_line, 1, "missing `vars:` line"))?;
        let tokens = lex(chunks)?;
        if tokens.is_empty() {
            return Err(Error::parse(*line, 1, "empty `vars:` line"));
        }
        let mut names = Vec::new();
        let mut expect_name = true;
        for t in &tokens {
            match (&t.kind, expect_name) {
                (TokenKind::Ident(name), true) => {
                    if names.contains(name) {
                        return Err(Error::parse(
                            t.line,
                            t.col,
                            format!("duplicate variable `{name}`"),
                        ));
                    }
                    names.push(name.clone());
                    expect_name = false;
                }
                (TokenKind::Comma | TokenKind::Semi, false) => expect_name = true,
                _ => {
                    return Err(Error::parse(
                        t.line,
                        t.col,
                        format!("unexpected `{}` in variable list", t.kind),
                    ))
                }
            }
        }
        if expect_name {
            let t = tokens.last().unwrap();
            return Err(Error::parse(
                t.line,
                t.col,
                "trailing separator in variable list",
            ));
        }
        Ring::new(names).map_err(|e| Error::parse(*line, 1, e.to_string()))
    }
}

impl RawSection {
    /// Expressions with the position of each expression's first token.
    fn parse_exprs(&self, ring: &Ring) -> Result<Vec<(Polynomial, (usize, usize))>> {
        let tokens = lex(&self.chunks)?;
        if tokens.is_empty() {
            return Err(Error::parse(self.line, 1, "empty section"));
        }
        let mut polys = Vec::new();
        let mut parser = ExprParser {
            ring,
            tokens: &tokens,
            pos: 0,
        };
        loop {
            let start = (tokens[parser.pos].line, tokens[parser.pos].col);
            polys.push((parser.parse_expr()?, start));
            if parser.pos == tokens.len() {
                break;
            }
            match tokens[parser.pos].kind {
                TokenKind::Comma | TokenKind::Semi => {
                    parser.pos += 1;
                    if parser.pos == tokens.len() {
                        let t = &tokens[parser.pos - 1];
                        return Err(Error::parse(t.line, t.col, "trailing separator"));
                    }
                }
                _ => {
                    let t = &tokens[parser.pos];
                    return Err(Error::parse(
                        t.line,
                        t.col,
                        format!(
                            "unexpected `{}` (expected `,`, `;` or end of section)",
                            t.kind
                        ),
                    ));
                }
            }
        }
        Ok(polys)
    }
}

fn parse_raw(text: &str) -> Result<RawDocument> {
    let mut doc = RawDocument {
        name: None,
        vars_chunks: None,
        sections: Vec::new(),
        last_line: 1,
    };
    let mut seen_degrees: Vec<u32> = Vec::new();
    enum Target {
        Vars,
        Section(usize),
        None,
    }
    let mut target = Target::None;

    for (line_ix, raw_line) in text.lines().enumerate() {
        let line_no = line_ix + 1;
        doc.last_line = line_no;
        let line = match raw_line.find('#') {
            Some(ix) => &raw_line[..ix],
            None => raw_line,
        };
        if line.trim().is_empty() {
            continue;
        }
        if let Some(header) = detect_header(line) {
            let (keyword, content_col, content) = header;
            match keyword.as_str() {
                "name" => {
                    if doc.name.is_some() {
                        return Err(Error::parse(line_no, 1, "duplicate `name:`"));
                    }
                    let value = content.trim();
                    if value.is_empty() {
                        return Err(Error::parse(line_no, content_col, "empty `name:`"));
                    }
                    doc.name = Some(value.to_string());
                    target = Target::None;
                }
                "vars" => {
                    if doc.vars_chunks.is_some() {
                        return Err(Error::parse(line_no, 1, "duplicate `vars:`"));
                    }
                    doc.vars_chunks = Some((
                        line_no,
                        vec![Chunk {
                            line: line_no,
                            col: content_col,
                            text: content,
                        }],
                    ));
                    target = Target::Vars;
                }
                "gens" => {
                    if doc.vars_chunks.is_none() {
                        return Err(Error::parse(line_no, 1, "`vars:` must come first"));
                    }
                    if doc
                        .sections
                        .iter()
                        .any(|s| matches!(s.kind, SectionKind::Gens))
                    {
                        return Err(Error::parse(line_no, 1, "duplicate `gens:` section"));
                    }
                    doc.sections.push(RawSection {
                        kind: SectionKind::Gens,
                        line: line_no,
                        chunks: vec![Chunk {
                            line: line_no,
                            col: content_col,
                            text: content,
                        }],
                    });
                    target = Target::Section(doc.sections.len() - 1);
                }
                f_section => {
                    let digits = &f_section[1..];
                    let k: u32 = digits.parse().map_err(|_| {
                        Error::parse(line_no, 1, format!("bad section degree `{digits}`"))
                    })?;
                    if k < 2 {
                        return Err(Error::parse(
                            line_no,
                            1,
                            format!("F{k} cannot be specified: degrees below 2 are fixed"),
                        ));
                    }
                    if doc.vars_chunks.is_none() {
                        return Err(Error::parse(line_no, 1, "`vars:` must come first"));
                    }
                    if seen_degrees.contains(&k) {
                        return Err(Error::parse(line_no, 1, format!("duplicate section F{k}")));
                    }
                    seen_degrees.push(k);
                    doc.sections.push(RawSection {
                        kind: SectionKind::Component(k),
                        line: line_no,
                        chunks: vec![Chunk {
                            line: line_no,
                            col: content_col,
                            text: content,
                        }],
                    });
                    target = Target::Section(doc.sections.len() - 1);
                }
            }
        } else {
            let chunk = Chunk {
                line: line_no,
                col: 1,
                text: line.to_string(),
            };
            match target {
                Target::Vars => doc.vars_chunks.as_mut().unwrap().1.push(chunk),
                Target::Section(ix) => doc.sections[ix].chunks.push(chunk),
                Target::None => {
                    return Err(Error::parse(
                        line_no,
                        1,
                        "expected a section header (`vars:`, `name:`, `F<k>:` or `gens:`)",
                    ))
                }
            }
        }
    }
    Ok(doc)
}

/// When the line's first colon is preceded by a bare identifier, treat it
/// as a section header. Returns (keyword, content column, content).
fn detect_header(line: &str) -> Option<(String, usize, String)> {
    let colon = line.find(':')?;
    let head = line[..colon].trim();
    if head.is_empty() || !head.chars().next().unwrap().is_ascii_alphabetic() {
        return None;
    }
    if !head.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return None;
    }
    let known = head == "vars"
        || head == "name"
        || head == "gens"
        || (head.starts_with('F')
            && head.len() > 1
            && head[1..].chars().all(|c| c.is_ascii_digit()));
    if !known {
        return None;
    }
    Some((head.to_string(), colon + 2, line[colon + 1..].to_string()))
}

// ---------------------------------------------------------------------------
// lexer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum TokenKind {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Comma,
    Semi,
}

impl std::fmt::Display for TokenKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TokenKind::Ident(s) => write!(f, "{s}"),
            TokenKind::Int(v) => write!(f, "{v}"),
            TokenKind::Plus => write!(f, "+"),
            TokenKind::Minus => write!(f, "-"),
            TokenKind::Star => write!(f, "*"),
            TokenKind::Caret => write!(f, "^"),
            TokenKind::Slash => write!(f, "/"),
            TokenKind::LParen => write!(f, "("),
            TokenKind::RParen => write!(f, ")"),
            TokenKind::Comma => write!(f, ","),
            TokenKind::Semi => write!(f, ";"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    line: usize,
    col: usize,
}

fn lex(chunks: &[Chunk]) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    for chunk in chunks {
        let mut chars = chunk.text.char_indices().peekable();
        while let Some(&(ix, c)) = chars.peek() {
            let col = chunk.col + ix;
            match c {
                ' ' | '\t' | '\r' => {
                    chars.next();
                }
                '+' | '-' | '*' | '^' | '/' | '(' | ')' | ',' | ';' => {
                    chars.next();
                    let kind = match c {
                        '+' => TokenKind::Plus,
                        '-' => TokenKind::Minus,
                        '*' => TokenKind::Star,
                        '^' => TokenKind::Caret,
                        '/' => TokenKind::Slash,
                        '(' => TokenKind::LParen,
                        ')' => TokenKind::RParen,
                        ',' => TokenKind::Comma,
                        _ => TokenKind::Semi,
                    };
                    tokens.push(Token {
                        kind,
                        line: chunk.line,
                        col,
                    });
                }
                '0'..='9' => {
                    let mut digits = String::new();
                    while let Some(&(_, d)) = chars.peek() {
                        if d.is_ascii_digit() {
                            digits.push(d);
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    let value = BigInt::parse_bytes(digits.as_bytes(), 10)
                        .ok_or_else(|| Error::parse(chunk.line, col, "bad integer literal"))?;
                    tokens.push(Token {
                        kind: TokenKind::Int(value),
                        line: chunk.line,
                        col,
                    });
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let mut name = String::new();
                    while let Some(&(_, d)) = chars.peek() {
                        if d.is_ascii_alphanumeric() || d == '_' {
                            name.push(d);
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    tokens.push(Token {
                        kind: TokenKind::Ident(name),
                        line: chunk.line,
                        col,
                    });
                }
                other => {
                    return Err(Error::parse(
                        chunk.line,
                        col,
                        format!("unexpected character `{other}`"),
                    ))
                }
            }
        }
    }
    Ok(tokens)
}

// ---------------------------------------------------------------------------
// expression parser
// ---------------------------------------------------------------------------

struct ExprParser<'a> {
    ring: &'a Ring,
    tokens: &'a [Token],
    pos: usize,
}

impl<'a> ExprParser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn error_here(&self, message: impl Into<String>) -> Error {
        match self.peek() {
            Some(t) => Error::parse(t.line, t.col, message),
            None => {
                let t = self.tokens.last().unwrap();
                Error::parse(t.line, t.col, format!("{} (input ended)", message.into()))
            }
        }
    }

    fn parse_expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.parse_term()?;
        while let Some(t) = self.peek() {
            match t.kind {
                TokenKind::Plus => {
                    self.pos += 1;
                    acc = &acc + &self.parse_term()?;
                }
                TokenKind::Minus => {
                    self.pos += 1;
                    acc = &acc - &self.parse_term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<Polynomial> {
        let mut acc = self.parse_factor()?;
        while let Some(t) = self.peek() {
            match t.kind {
                TokenKind::Star => {
                    self.pos += 1;
                    acc = &acc * &self.parse_factor()?;
                }
                TokenKind::Slash => {
                    return Err(
                        self.error_here("`/` is only allowed inside rational literals like 3/2")
                    );
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<Polynomial> {
        if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Minus)) {
            self.pos += 1;
            let inner = self.parse_factor()?;
            return Ok(inner.neg_ref());
        }
        let base = self.parse_atom()?;
        if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Caret)) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Token {
                    kind: TokenKind::Int(v),
                    line,
                    col,
                }) => {
                    self.pos += 1;
                    let exp = u32::try_from(&v)
                        .map_err(|_| Error::parse(line, col, "exponent too large"))?;
                    Ok(base.pow(exp))
                }
                _ => Err(self.error_here("expected a nonnegative integer exponent after `^`")),
            }
        } else {
            Ok(base)
        }
    }

    fn parse_atom(&mut self) -> Result<Polynomial> {
        let token = self
            .peek()
            .cloned()
            .ok_or_else(|| self.error_here("expected an expression"))?;
        match token.kind {
            TokenKind::LParen => {
                self.pos += 1;
                let inner = self.parse_expr()?;
                match self.peek().map(|t| &t.kind) {
                    Some(TokenKind::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.error_here("expected `)`")),
                }
            }
            TokenKind::Ident(name) => {
                self.pos += 1;
                match self.ring.index_of(&name) {
                    Some(ix) => Polynomial::variable(self.ring, ix),
                    None => Err(Error::parse(
                        token.line,
                        token.col,
                        format!("unknown variable `{name}`"),
                    )),
                }
            }
            TokenKind::Int(numer) => {
                self.pos += 1;
                // a following `/` makes this a rational literal
                if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Slash)) {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Token {
                            kind: TokenKind::Int(denom),
                            line,
                            col,
                        }) => {
                            self.pos += 1;
                            if denom == BigInt::from(0) {
                                return Err(Error::parse(line, col, "zero denominator"));
                            }
                            Ok(Polynomial::constant(self.ring, Rational::new(numer, denom)))
                        }
                        _ => Err(self.error_here("expected an integer denominator")),
                    }
                } else {
                    Ok(Polynomial::constant(self.ring, Rational::from(numer)))
                }
            }
            other => Err(Error::parse(
                token.line,
                token.col,
                format!("unexpected `{other}`"),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_basic_example_document() {
        let doc = SymbolSystemDocument::parse(
            "vars: x1, x2\nF2: x1^2 + x2^2; x1*x2\nF3: x1^3 + 3*x1*x2^2\n",
        )
        .unwrap();
        assert_eq!(doc.ring.vars(), &["x1".to_string(), "x2".to_string()]);
        assert_eq!(doc.sections[&2].len(), 2);
        assert_eq!(doc.sections[&3].len(), 1);
        let sys = doc.to_system().unwrap();
        assert_eq!(sys.rank(), 3);
    }

    #[test]
    fn parses_the_twisted_cubic_document() {
        let doc = SymbolSystemDocument::parse("vars: x\nF2: x^2\nF3: x^3\n").unwrap();
        assert_eq!(doc.ring.var_count(), 1);
        assert_eq!(doc.to_system().unwrap().rank(), 3);
    }

    #[test]
    fn rejects_inhomogeneous_generators() {
        let err = SymbolSystemDocument::parse("vars: x1\nF2: x1^2 + x1\n").unwrap_err();
        match err {
            Error::Parse { line, message, .. } => {
                assert_eq!(line, 2);
                assert!(message.contains("homogeneous"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_unknown_variables_and_syntax_errors_with_positions() {
        let err = SymbolSystemDocument::parse("vars: x1\nF2: x1*x9\n").unwrap_err();
        match err {
            Error::Parse { line, col, message } => {
                assert_eq!((line, col), (2, 8));
                assert!(message.contains("unknown variable"));
            }
            other => panic!("unexpected {other:?}"),
        }

        assert!(SymbolSystemDocument::parse("vars: x\nF2: x^2 +\n").is_err());
        assert!(SymbolSystemDocument::parse("vars: x\nF2: 2x\n").is_err());
        assert!(SymbolSystemDocument::parse("vars: x\nF2: x/2\n").is_err());
    }

    #[test]
    fn rejects_duplicate_and_reserved_sections() {
        assert!(SymbolSystemDocument::parse("vars: x\nF2: x^2\nF2: x^2\n").is_err());
        assert!(SymbolSystemDocument::parse("vars: x\nF1: x\n").is_err());
        assert!(SymbolSystemDocument::parse("F2: x^2\nvars: x\n").is_err());
        assert!(SymbolSystemDocument::parse("vars: x\nF2:\n").is_err());
    }

    #[test]
    fn comments_and_multiline_sections() {
        let doc = SymbolSystemDocument::parse(
            "# a comment\nname: sample\nvars: x1, x2 # trailing comment\nF2: x1^2;\t\n  x2^2\n",
        )
        .unwrap();
        assert_eq!(doc.name.as_deref(), Some("sample"));
        assert_eq!(doc.sections[&2].len(), 2);
    }

    #[test]
    fn ideal_documents() {
        let doc = IdealDocument::parse("vars: z0, z1, w2, w3\ngens: z0*w2 - z1^2; z0*w3 - z1*w2\n")
            .unwrap();
        assert_eq!(doc.generators.len(), 2);
        assert!(IdealDocument::parse("vars: x\nF2: x^2\n").is_err());
        assert!(IdealDocument::parse("vars: x\n").is_err());
    }

    #[test]
    fn print_parse_round_trip_is_stable() {
        let text = "name: roundtrip\nvars: x1, x2\nF2: x1^2 - 1/2*x1*x2; x2^2\nF3: x1^3\n";
        let doc = SymbolSystemDocument::parse(text).unwrap();
        let printed = doc.print();
        let doc2 = SymbolSystemDocument::parse(&printed).unwrap();
        assert_eq!(doc, doc2);
        assert_eq!(printed, doc2.print());

        let itext = "vars: a, b\ngens: a^2 - b; b^3\n";
        let idoc = IdealDocument::parse(itext).unwrap();
        let idoc2 = IdealDocument::parse(&idoc.print()).unwrap();
        assert_eq!(idoc, idoc2);
    }

    #[test]
    fn expression_grammar_details() {
        let r = Ring::new(vec!["x", "y"]).unwrap();
        let q = parse_polynomial(&r, "(x + y)^2 - 2*x*y").unwrap();
        assert_eq!(q, parse_polynomial(&r, "x^2 + y^2").unwrap());
        assert_eq!(
            parse_polynomial(&r, "-x^2").unwrap(),
            parse_polynomial(&r, "0 - x^2").unwrap()
        );
        assert_eq!(
            parse_polynomial(&r, "3/2").unwrap(),
            Polynomial::constant(&r, crate::poly::rat(3, 2))
        );
        assert!(parse_polynomial(&r, "3/0").is_err());
        assert!(parse_polynomial(&r, "x^-1").is_err());
        assert!(parse_polynomial(&r, "").is_err());
    }
}
