//! Tolerance expressions such as `5/n` or `2*ln(S)/sqrt(n)`, parsed once and
//! evaluated per instance.

use std::fmt;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq)]
enum Node {
    Num(f64),
    Var(Var),
    Neg(Box<Node>),
    Bin(Op, Box<Node>, Box<Node>),
    Call(Func, Box<Node>),
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Func {
    Ln,
    Sqrt,
    Exp,
    Abs,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Var {
    N,
    M,
    S,
    D,
}

/// Values the variables take for one instance.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vars {
    pub n: f64,
    pub m: f64,
    pub s: f64,
    pub d: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tolerance {
    src: String,
    root: Node,
}

impl Tolerance {
    pub fn eval(&self, v: &Vars) -> f64 {
        eval(&self.root, v)
    }

    pub fn source(&self) -> &str {
        &self.src
    }
}

impl fmt::Display for Tolerance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.src)
    }
}

impl serde::Serialize for Tolerance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.src)
    }
}

impl FromStr for Tolerance {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut p = Parser { toks: lex(s)?, pos: 0 };
        let root = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(format!("unexpected `{}` in tolerance `{s}`", p.toks[p.pos]));
        }
        Ok(Tolerance { src: s.to_string(), root })
    }
}

fn eval(node: &Node, v: &Vars) -> f64 {
    match node {
        Node::Num(x) => *x,
        Node::Var(Var::N) => v.n,
        Node::Var(Var::M) => v.m,
        Node::Var(Var::S) => v.s,
        Node::Var(Var::D) => v.d,
        Node::Neg(a) => -eval(a, v),
        Node::Bin(op, a, b) => {
            let (a, b) = (eval(a, v), eval(b, v));
            match op {
                Op::Add => a + b,
                Op::Sub => a - b,
                Op::Mul => a * b,
                Op::Div => a / b,
                Op::Pow => a.powf(b),
            }
        }
        Node::Call(f, a) => {
            let a = eval(a, v);
            match f {
                Func::Ln => a.ln(),
                Func::Sqrt => a.sqrt(),
                Func::Exp => a.exp(),
                Func::Abs => a.abs(),
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Sym(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(x) => write!(f, "{x}"),
            Tok::Ident(s) => f.write_str(s),
            Tok::Sym(c) => write!(f, "{c}"),
        }
    }
}

fn lex(s: &str) -> Result<Vec<Tok>, String> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            // exponent, only when digits follow
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text: String = chars[start..i].iter().collect();
            let x = text.parse().map_err(|_| format!("bad number `{text}`"))?;
            out.push(Tok::Num(x));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(format!("unexpected character `{c}` in tolerance `{s}`"));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Node, String> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat('+') {
                Op::Add
            } else if self.eat('-') {
                Op::Sub
            } else {
                return Ok(lhs);
            };
            lhs = Node::Bin(op, Box::new(lhs), Box::new(self.term()?));
        }
    }

    fn term(&mut self) -> Result<Node, String> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat('*') {
                Op::Mul
            } else if self.eat('/') {
                Op::Div
            } else {
                return Ok(lhs);
            };
            lhs = Node::Bin(op, Box::new(lhs), Box::new(self.unary()?));
        }
    }

    fn unary(&mut self) -> Result<Node, String> {
        if self.eat('-') {
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    // right associative, binds tighter than unary minus on its left
    fn power(&mut self) -> Result<Node, String> {
        let base = self.atom()?;
        if self.eat('^') {
            let exp = self.unary()?;
            return Ok(Node::Bin(Op::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node, String> {
        let tok = self.peek().cloned().ok_or("tolerance ends unexpectedly")?;
        self.pos += 1;
        match tok {
            Tok::Num(x) => Ok(Node::Num(x)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err("missing `)` in tolerance".into());
                }
                Ok(e)
            }
            Tok::Ident(name) => {
                let var = match name.as_str() {
                    "n" => Some(Var::N),
                    "m" => Some(Var::M),
                    "S" => Some(Var::S),
                    "d" => Some(Var::D),
                    _ => None,
                };
                if let Some(v) = var {
                    return Ok(Node::Var(v));
                }
                let f = match name.as_str() {
                    "ln" | "log" => Func::Ln,
                    "sqrt" => Func::Sqrt,
                    "exp" => Func::Exp,
                    "abs" => Func::Abs,
                    _ => return Err(format!("unknown name `{name}` in tolerance (variables: n, m, S, d)")),
                };
                if !self.eat('(') {
                    return Err(format!("`{name}` must be followed by `(`"));
                }
                let arg = self.expr()?;
                if !self.eat(')') {
                    return Err("missing `)` in tolerance".into());
                }
                Ok(Node::Call(f, Box::new(arg)))
            }
            Tok::Sym(c) => Err(format!("unexpected `{c}` in tolerance")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(src: &str, n: f64) -> f64 {
        let v = Vars { n, m: n, s: 3.0 * n, d: 3.0 };
        src.parse::<Tolerance>().unwrap().eval(&v)
    }

    #[test]
    fn arithmetic() {
        assert_eq!(at("5/n", 4.0), 1.25);
        assert_eq!(at("1 + 2 * 3", 0.0), 7.0);
        assert_eq!(at("(1 + 2) * 3", 0.0), 9.0);
        assert_eq!(at("2^3^2", 0.0), 512.0);
        assert_eq!(at("-2^2", 0.0), -4.0);
        assert_eq!(at("2^-1", 0.0), 0.5);
        assert_eq!(at("10 - 4 - 3", 0.0), 3.0);
        assert_eq!(at("1e-3 * S", 10.0), 0.03);
        assert_eq!(at("d*d/n", 9.0), 1.0);
    }

    #[test]
    fn functions() {
        assert!((at("ln(S)/sqrt(n)", 4.0) - 12f64.ln() / 2.0).abs() < 1e-15);
        assert_eq!(at("exp(0) + abs(-2)", 1.0), 3.0);
        assert_eq!(at("log(1)", 1.0), 0.0);
    }

    #[test]
    fn rejects() {
        for bad in ["", "5/", "x", "ln 2", "(1", "1)", "2 $ 3", "sin(1)"] {
            assert!(bad.parse::<Tolerance>().is_err(), "{bad}");
        }
    }
}
