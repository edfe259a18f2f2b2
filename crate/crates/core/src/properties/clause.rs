//! Equational clauses over a single binary operation.
//!
//! A clause is either an identity `s = t` or a Horn implication
//! `s1 = t1 => s2 = t2` between equations. Terms are built from variables,
//! constants (`$0`, `$1`, ... bound at parse time) and `*`. Subterms are
//! stored in a flat pool in post-order, so every child precedes its parent.

use std::fmt;

use crate::error::{Error, Result};
use crate::groupoid::Groupoid;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Node {
    Var(usize),
    Const(usize),
    Mul(usize, usize),
}

#[derive(Clone, Debug)]
pub struct Clause {
    name: String,
    text: String,
    nodes: Vec<Node>,
    var_names: Vec<String>,
    premises: Vec<(usize, usize)>,
    conclusion: (usize, usize),
}

impl Clause {
    pub fn parse(name: &str, text: &str) -> Result<Clause> {
        Self::parse_with_constants(name, text, &[])
    }

    /// Parses `text`, substituting `consts[i]` for every `$i`.
    pub fn parse_with_constants(name: &str, text: &str, consts: &[usize]) -> Result<Clause> {
        let bad = |why: &str| Error::Precondition(format!("clause `{text}`: {why}"));
        let mut parser = Parser {
            chars: text.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            nodes: Vec::new(),
            var_names: Vec::new(),
            consts,
        };
        let mut equations = Vec::new();
        loop {
            let lhs = parser.term().map_err(|e| bad(&e))?;
            if !parser.eat("=") {
                return Err(bad("expected `=`"));
            }
            let rhs = parser.term().map_err(|e| bad(&e))?;
            equations.push((lhs, rhs));
            if parser.at_end() {
                break;
            }
            if !parser.eat("=>") && !parser.eat(",") {
                return Err(bad("expected `=>`, `,` or end of input"));
            }
        }
        let conclusion = equations.pop().expect("at least one equation");
        Ok(Clause {
            name: name.to_owned(),
            text: text.to_owned(),
            nodes: parser.nodes,
            var_names: parser.var_names,
            premises: equations,
            conclusion,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn var_count(&self) -> usize {
        self.var_names.len()
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.var_names[i]
    }

    pub fn premises(&self) -> &[(usize, usize)] {
        &self.premises
    }

    pub fn conclusion(&self) -> (usize, usize) {
        self.conclusion
    }

    pub fn is_identity(&self) -> bool {
        self.premises.is_empty()
    }

    /// Evaluates every node under a full variable binding.
    pub fn evaluate(&self, g: &Groupoid, binding: &[usize]) -> Vec<usize> {
        let mut val = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let v = match *node {
                Node::Var(i) => binding[i],
                Node::Const(c) => c,
                Node::Mul(a, b) => g.mul(val[a], val[b]),
            };
            val.push(v);
        }
        val
    }

    /// True when the clause holds under `binding`.
    pub fn satisfied(&self, g: &Groupoid, binding: &[usize]) -> bool {
        let val = self.evaluate(g, binding);
        let premises_hold = self.premises.iter().all(|&(l, r)| val[l] == val[r]);
        !premises_hold || val[self.conclusion.0] == val[self.conclusion.1]
    }

    /// First binding (in lexicographic order) that violates the clause.
    pub fn find_violation(&self, g: &Groupoid) -> Option<Vec<usize>> {
        let n = g.order();
        let k = self.var_count();
        let mut binding = vec![0; k];
        loop {
            if !self.satisfied(g, &binding) {
                return Some(binding);
            }
            let mut i = k;
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                binding[i] += 1;
                if binding[i] < n {
                    break;
                }
                binding[i] = 0;
            }
        }
    }

    pub fn holds_on(&self, g: &Groupoid) -> bool {
        self.find_violation(g).is_none()
    }

    /// Renders node `i` with variables replaced by element names.
    pub fn render(&self, i: usize, binding: &[usize], name: &dyn Fn(usize) -> String) -> String {
        match self.nodes[i] {
            Node::Var(v) => name(binding[v]),
            Node::Const(c) => name(c),
            Node::Mul(a, b) => {
                let wrap = |j: usize| {
                    let s = self.render(j, binding, name);
                    if matches!(self.nodes[j], Node::Mul(..)) {
                        format!("({s})")
                    } else {
                        s
                    }
                };
                format!("{}*{}", wrap(a), wrap(b))
            }
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.text)
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    nodes: Vec<Node>,
    var_names: Vec<String>,
    consts: &'a [usize],
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, s: &str) -> bool {
        let want: Vec<char> = s.chars().collect();
        if self.chars[self.pos..].starts_with(&want) {
            // `=` must not swallow the start of `=>`
            if s == "=" && self.chars.get(self.pos + 1) == Some(&'>') {
                return false;
            }
            self.pos += want.len();
            true
        } else {
            false
        }
    }

    fn push(&mut self, node: Node) -> usize {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    fn term(&mut self) -> std::result::Result<usize, String> {
        let mut left = self.factor()?;
        while self.eat("*") || self.eat("·") {
            let right = self.factor()?;
            left = self.push(Node::Mul(left, right));
        }
        Ok(left)
    }

    fn factor(&mut self) -> std::result::Result<usize, String> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let t = self.term()?;
                if !self.eat(")") {
                    return Err("unbalanced parenthesis".into());
                }
                Ok(t)
            }
            Some('$') => {
                self.pos += 1;
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                let i: usize = digits.parse().map_err(|_| "bad constant".to_string())?;
                let c = *self.consts.get(i).ok_or("constant not supplied")?;
                Ok(self.push(Node::Const(c)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let idx = match self.var_names.iter().position(|v| *v == name) {
                    Some(i) => i,
                    None => {
                        self.var_names.push(name);
                        self.var_names.len() - 1
                    }
                };
                Ok(self.push(Node::Var(idx)))
            }
            other => Err(format!("unexpected {other:?}")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_nested_identity() {
        let c = Clause::parse("medial", "(x*y)*(z*w) = (x*z)*(y*w)").unwrap();
        assert_eq!(c.var_count(), 4);
        assert!(c.is_identity());
        assert_eq!(c.nodes().len(), 14);
    }

    #[test]
    fn parses_horn_clause_with_constant() {
        let c = Clause::parse_with_constants("t", "x*y = $0 => y = x", &[3]).unwrap();
        assert_eq!(c.premises().len(), 1);
        assert!(c.nodes().contains(&Node::Const(3)));
        assert!(Clause::parse_with_constants("t", "x = $1", &[0]).is_err());
    }

    #[test]
    fn rejects_garbage() {
        assert!(Clause::parse("bad", "x*").is_err());
        assert!(Clause::parse("bad", "(x*y = x").is_err());
        assert!(Clause::parse("bad", "x*y").is_err());
    }

    #[test]
    fn finds_first_violation() {
        let g = Groupoid::from_fn(3, |x, y| (x + y) % 3).unwrap();
        let c = Clause::parse("idem", "x*x = x").unwrap();
        assert_eq!(c.find_violation(&g), Some(vec![1]));
        let comm = Clause::parse("comm", "x*y = y*x").unwrap();
        assert!(comm.holds_on(&g));
    }

    #[test]
    fn renders_instances() {
        let c = Clause::parse("b", "(y*x)*(x*y) = x").unwrap();
        let (l, _) = c.conclusion();
        let s = c.render(l, &[0, 1], &|v| ["p", "q"][v].to_string());
        assert_eq!(s, "(p*q)*(q*p)");
    }
}
