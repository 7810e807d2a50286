//! Text format for graphs.
//!
//! A tree is written from a top vertex: `T(x, y, z)` lists the three branches in
//! cyclic order, and a nested `T(x, y)` is a vertex whose cyclic order is
//! (parent, x, y). Leaves are `h:<letter>` for an H-color or `d:<id><H|T>` for
//! the head or tail of dotted edge `<id>`. Trees are separated by `|`.
//!
//! A vector file holds one term per line, `<coefficient> <graph>`, with an
//! optional `genus <g>` line, an optional `ordered` line and `#` comments.

use super::{Expr, GraphError, GraphVector, HairyGraph, Slot};
use crate::linalg::Rational;
use crate::tensor::parse_letter;

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    offset: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, GraphError> {
        Err(GraphError::Parse {
            pos: self.offset + self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> Result<(), GraphError> {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn items(&mut self) -> Result<Vec<Expr>, GraphError> {
        self.eat(b'T')?;
        self.eat(b'(')?;
        let mut out = vec![self.item()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            out.push(self.item()?);
        }
        self.eat(b')')?;
        Ok(out)
    }

    fn item(&mut self) -> Result<Expr, GraphError> {
        match self.peek() {
            Some(b'T') => {
                let mut v = self.items()?;
                if v.len() != 2 {
                    return self.err("inner vertex needs two branches");
                }
                let y = v.pop().unwrap();
                let x = v.pop().unwrap();
                Ok(Expr::node(x, y))
            }
            Some(b'h') | Some(b'd') => self.slot().map(Expr::Leaf),
            _ => self.err("expected `T(` or a slot"),
        }
    }

    fn slot(&mut self) -> Result<Slot, GraphError> {
        let kind = self.s[self.pos];
        self.pos += 1;
        self.eat(b':')?;
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        let word = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        if kind == b'h' {
            match parse_letter(word) {
                Some(s) => Ok(Slot::Color(s)),
                None => self.err(format!("bad letter `{word}`")),
            }
        } else {
            let (id, end) = word.split_at(word.len().saturating_sub(1));
            let head = match end {
                "H" => true,
                "T" => false,
                _ => return self.err("dotted end must finish with H or T"),
            };
            match id.parse::<u16>() {
                Ok(edge) => Ok(Slot::Dot { edge, head }),
                Err(_) => self.err(format!("bad edge id `{id}`")),
            }
        }
    }

    fn graph(&mut self) -> Result<Vec<[Expr; 3]>, GraphError> {
        let mut trees = Vec::new();
        loop {
            let v = self.items()?;
            let Ok(top) = <[Expr; 3]>::try_from(v) else {
                return self.err("top vertex needs three branches");
            };
            trees.push(top);
            if self.peek() == Some(b'|') {
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(trees)
    }
}

fn parse_at(text: &str, offset: usize, genus: usize, ordered: bool) -> Result<HairyGraph, GraphError> {
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
        offset,
    };
    HairyGraph::from_trees(p.graph()?, genus, ordered)
}

pub fn parse_graph(text: &str, genus: usize, ordered: bool) -> Result<HairyGraph, GraphError> {
    parse_at(text, 0, genus, ordered)
}

/// Parses a vector file. `default_genus` applies when the file has no `genus` line.
pub fn parse_graph_vector(text: &str, default_genus: usize) -> Result<GraphVector, GraphError> {
    let mut genus = default_genus;
    let mut ordered = false;
    let mut lines = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let body = line.split('#').next().unwrap().trim();
        let lead = line.len() - line.trim_start().len();
        if let Some(rest) = body.strip_prefix("genus") {
            genus = rest.trim().parse().map_err(|_| GraphError::Parse {
                pos: offset,
                msg: "bad genus".into(),
            })?;
        } else if body == "ordered" {
            ordered = true;
        } else if !body.is_empty() {
            lines.push((offset + lead, body.to_string()));
        }
        offset += line.len();
    }
    let mut v = GraphVector::zero(genus, ordered);
    for (off, body) in lines {
        let (coef, rest, skip) = match body.find('T') {
            Some(0) => (Rational::one(), body.as_str(), 0),
            Some(i) => {
                let c: Rational = body[..i].trim().parse().map_err(|_| GraphError::Parse {
                    pos: off,
                    msg: format!("bad coefficient `{}`", body[..i].trim()),
                })?;
                (c, &body[i..], i)
            }
            None => {
                return Err(GraphError::Parse {
                    pos: off,
                    msg: "expected a graph".into(),
                })
            }
        };
        let g = parse_at(rest, off + skip, genus, ordered)?;
        v.add_graph(&g, &coef)?;
    }
    Ok(v)
}
