//! Line-oriented presentation DSL.
//!
//! ```text
//! # the cyclic example
//! vertex 1 2 3
//! arrow alpha 1 2
//! arrow beta 2 1
//! arrow gamma 2 3
//! relation alpha*beta*alpha
//! relation 3/2*p*q - r*s = 0
//! ```
//!
//! Declarations may appear in any order; relations are resolved after all
//! vertices and arrows are known.

use crate::error::{Error, Result};
use crate::linalg::Rational;

use super::{AlgebraPresentation, Arrow, Path, Quiver, Relation};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(i64),
    Star,
    Plus,
    Minus,
    Slash,
    Eq,
}

struct Lexed {
    tok: Tok,
    col: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, column, message: message.into() }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Whitespace-separated words with 1-based character columns.
fn words(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in line.char_indices().enumerate() {
        if ch.is_whitespace() {
            if let Some((b, c)) = start.take() {
                out.push((c + 1, &line[b..byte]));
            }
        } else if start.is_none() {
            start = Some((byte, col));
        }
    }
    if let Some((b, c)) = start {
        out.push((c + 1, &line[b..]));
    }
    out
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<Lexed>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '*' => Tok::Star,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '/' => Tok::Slash,
            '=' => Tok::Eq,
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let s: String = chars[i..j].iter().collect();
                let n = s.parse::<i64>().map_err(|_| syntax(line, col, "coefficient too large"))?;
                out.push(Lexed { tok: Tok::Num(n), col });
                i = j;
                continue;
            }
            c if is_ident_start(c) => {
                let mut j = i;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                out.push(Lexed { tok: Tok::Ident(chars[i..j].iter().collect()), col });
                i = j;
                continue;
            }
            other => return Err(syntax(line, col, format!("unexpected character `{other}`"))),
        };
        out.push(Lexed { tok, col });
        i += 1;
    }
    Ok(out)
}

struct RelationParser<'a> {
    toks: Vec<Lexed>,
    pos: usize,
    line: usize,
    end_col: usize,
    quiver: &'a Quiver,
}

impl RelationParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn expect_num(&mut self) -> Result<i64> {
        match self.peek() {
            Some(&Tok::Num(n)) => {
                self.pos += 1;
                Ok(n)
            }
            _ => Err(syntax(self.line, self.col(), "expected a number")),
        }
    }

    fn parse(mut self) -> Result<Relation> {
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let mut sign = 1i64;
            match self.peek() {
                Some(Tok::Plus) if !first => self.pos += 1,
                Some(Tok::Minus) => {
                    sign = -1;
                    self.pos += 1;
                }
                _ if first => {}
                _ => return Err(syntax(self.line, self.col(), "expected `+` or `-`")),
            }
            first = false;
            terms.push(self.term(sign)?);
            match self.peek() {
                None => break,
                Some(Tok::Eq) => {
                    self.pos += 1;
                    if self.expect_num()? != 0 || self.peek().is_some() {
                        return Err(syntax(self.line, self.col(), "only `= 0` may follow a relation"));
                    }
                    break;
                }
                _ => {}
            }
        }
        Relation::new(terms).map_err(|e| match e {
            Error::NonParallel(_) => Error::NonParallel(format!("relation on line {}", self.line)),
            Error::InvalidRelation(m) => Error::InvalidRelation(format!("line {}: {m}", self.line)),
            other => other,
        })
    }

    fn term(&mut self, sign: i64) -> Result<(Rational, Path)> {
        let mut coeff = Rational::from_int(sign);
        if let Some(Tok::Num(_)) = self.peek() {
            let num = self.expect_num()?;
            let mut c = Rational::from_int(num);
            if self.peek() == Some(&Tok::Slash) {
                self.pos += 1;
                let col = self.col();
                let den = self.expect_num()?;
                if den == 0 {
                    return Err(syntax(self.line, col, "zero denominator"));
                }
                c = Rational::new(num, den);
            }
            if self.peek() != Some(&Tok::Star) {
                return Err(syntax(self.line, self.col(), "expected `*` after coefficient"));
            }
            self.pos += 1;
            coeff = &coeff * &c;
        }
        let mut arrows = Vec::new();
        loop {
            let col = self.col();
            match self.peek().cloned() {
                Some(Tok::Ident(name)) => {
                    self.pos += 1;
                    let a = self.quiver.arrow_by_name(&name).ok_or(Error::UnknownArrow {
                        name,
                        line: self.line,
                        column: col,
                    })?;
                    if let Some(&prev) = arrows.last() {
                        let (p, q) = (self.quiver.arrow(prev), self.quiver.arrow(a));
                        if p.target != q.source {
                            return Err(syntax(
                                self.line,
                                col,
                                format!("arrow `{}` does not start where `{}` ends", q.name, p.name),
                            ));
                        }
                    }
                    arrows.push(a);
                }
                _ => return Err(syntax(self.line, col, "expected an arrow name")),
            }
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((coeff, Path::from_arrows(self.quiver, arrows)?))
    }
}

/// Parses the presentation DSL.
pub fn parse_presentation(text: &str) -> Result<AlgebraPresentation> {
    let mut vertices: Vec<String> = Vec::new();
    let mut arrow_decls: Vec<(usize, Vec<(usize, &str)>)> = Vec::new();
    let mut relation_lines: Vec<(usize, usize, &str)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = strip_comment(raw);
        let ws = words(body);
        let Some(&(col, kw)) = ws.first() else { continue };
        match kw {
            "vertex" | "vertices" => {
                if ws.len() == 1 {
                    return Err(syntax(line, col + kw.chars().count(), "expected vertex names"));
                }
                for &(c, name) in &ws[1..] {
                    if vertices.iter().any(|v| v == name) {
                        return Err(syntax(line, c, format!("vertex `{name}` declared twice")));
                    }
                    vertices.push(name.to_string());
                }
            }
            "arrow" => {
                if ws.len() != 4 {
                    return Err(syntax(line, col, "expected `arrow <name> <source> <target>`"));
                }
                arrow_decls.push((line, ws[1..].to_vec()));
            }
            "relation" => {
                // keep the remainder verbatim, with its starting column
                let after = body.char_indices().nth(col - 1 + "relation".len()).map_or("", |(b, _)| &body[b..]);
                relation_lines.push((line, col + "relation".len(), after));
            }
            other => return Err(syntax(line, col, format!("unknown keyword `{other}`"))),
        }
    }

    let mut arrows: Vec<Arrow> = Vec::new();
    for (line, parts) in &arrow_decls {
        let (c, name) = parts[0];
        if !name.chars().next().is_some_and(is_ident_start) || !name.chars().all(is_ident_char) {
            return Err(syntax(*line, c, format!("invalid arrow name `{name}`")));
        }
        if arrows.iter().any(|a| a.name == name) {
            return Err(syntax(*line, c, format!("arrow `{name}` declared twice")));
        }
        let mut ends = [0usize; 2];
        for (k, &(c, v)) in parts[1..].iter().enumerate() {
            ends[k] = vertices.iter().position(|x| x == v).ok_or_else(|| Error::UnknownVertex {
                name: v.to_string(),
                line: *line,
                column: c,
            })?;
        }
        arrows.push(Arrow { name: name.to_string(), source: ends[0], target: ends[1] });
    }
    let quiver = Quiver::from_parts(vertices, arrows);

    let mut relations = Vec::new();
    for (line, col, rest) in relation_lines {
        let toks = lex(rest, line, col)?;
        if toks.is_empty() {
            return Err(syntax(line, col, "empty relation"));
        }
        let end_col = col + rest.chars().count();
        relations.push(RelationParser { toks, pos: 0, line, end_col, quiver: &quiver }.parse()?);
    }
    AlgebraPresentation::new(quiver, relations)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CYCLIC: &str = "\
# 1 <-> 2 -> 3
vertex 1 2 3
arrow alpha 1 2
arrow beta 2 1
arrow gamma 2 3
relation alpha*beta*alpha
";

    #[test]
    fn parses_cyclic_example() {
        let p = parse_presentation(CYCLIC).unwrap();
        assert_eq!(p.quiver().num_vertices(), 3);
        assert_eq!(p.quiver().num_arrows(), 3);
        assert_eq!(p.relations().len(), 1);
        assert!(p.relations()[0].is_zero_relation());
        assert_eq!(p.relations()[0].max_len(), 3);
        assert_eq!(p.relations()[0].display_composition(p.quiver()), "alpha beta alpha");
    }

    #[test]
    fn declarations_in_any_order_and_coefficients() {
        let src = "relation 3/2*a*b - c*d = 0\narrow a x y\narrow b y z\narrow c x w\narrow d w z\nvertex x y z w\n";
        let p = parse_presentation(src).unwrap();
        let r = &p.relations()[0];
        assert_eq!(r.terms().len(), 2);
        assert_eq!(r.terms()[0].0, Rational::new(3, 2));
        assert_eq!(r.terms()[1].0, Rational::from_int(-1));
        assert_eq!(parse_presentation(&p.to_dsl()).unwrap(), p);
    }

    #[test]
    fn vertices_only_is_semisimple_input() {
        let p = parse_presentation("vertex 1 2\n").unwrap();
        assert_eq!(p.quiver().num_arrows(), 0);
        assert!(p.relations().is_empty());
    }

    #[test]
    fn reports_positions() {
        let err = parse_presentation("vertex 1 2\narrow a 1 3\n").unwrap_err();
        assert_eq!(err, Error::UnknownVertex { name: "3".into(), line: 2, column: 11 });

        let err = parse_presentation("vertex 1 2\narrow a 1 2\nrelation a*b\n").unwrap_err();
        assert_eq!(err, Error::UnknownArrow { name: "b".into(), line: 3, column: 12 });

        let err = parse_presentation("vertex 1\nrelation a ^ b\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, column: 12, .. }), "{err:?}");

        let err = parse_presentation("vertex 1\nfoo\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, column: 1, .. }));
    }

    #[test]
    fn rejects_non_parallel_terms() {
        let src = "vertex 1 2 3\narrow a 1 2\narrow b 2 3\narrow c 1 3\narrow d 2 1\nrelation a*b - a*d\n";
        assert!(matches!(parse_presentation(src), Err(Error::NonParallel(_))));
    }

    #[test]
    fn rejects_non_composable_path() {
        let src = "vertex 1 2 3\narrow a 1 2\narrow b 1 3\nrelation a*b\n";
        assert!(matches!(parse_presentation(src), Err(Error::Syntax { line: 4, .. })));
    }

    #[test]
    fn length_one_terms_parse() {
        let p = parse_presentation("vertex 1 2\narrow a 1 2\nrelation a\n").unwrap();
        assert_eq!(p.relations()[0].min_len(), 1);
    }
}
