//! A small complex-valued expression language for user-supplied functions,
//! e.g. `1/(z*(z+1)*(z+2))` or `exp(z)/z`.
//!
//! The free variable may be written `z`, `t`, `x` or `lambda`. Constants:
//! `i`, `pi`, `e`. Functions: exp log sqrt sin cos tan sinh cosh csc cot
//! gamma j0.

use std::f64::consts::{E, PI};

use num_complex::Complex64 as C;

use crate::error::{Error, Result};
use crate::specfun::{gamma, j0_series};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(C),
    Var,
    Neg(Box<Expr>),
    Bin(Op, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Exp,
    Log,
    Sqrt,
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Csc,
    Cot,
    Gamma,
    J0,
}

impl Func {
    fn lookup(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "log" | "ln" => Func::Log,
            "sqrt" => Func::Sqrt,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "csc" => Func::Csc,
            "cot" => Func::Cot,
            "gamma" => Func::Gamma,
            "j0" => Func::J0,
            _ => return None,
        })
    }
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let toks = tokenize(src)?;
        let mut p = Parser { toks, pos: 0 };
        let e = p.sum()?;
        if p.pos != p.toks.len() {
            return Err(Error::Parse(format!("unexpected `{}`", p.toks[p.pos])));
        }
        Ok(e)
    }

    pub fn eval(&self, z: C) -> Result<C> {
        Ok(match self {
            Expr::Num(c) => *c,
            Expr::Var => z,
            Expr::Neg(e) => -e.eval(z)?,
            Expr::Bin(op, a, b) => {
                let (a, b) = (a.eval(z)?, b.eval(z)?);
                match op {
                    Op::Add => a + b,
                    Op::Sub => a - b,
                    Op::Mul => a * b,
                    Op::Div => a / b,
                    Op::Pow => {
                        if b.im == 0.0 && b.re == b.re.round() && b.re.abs() < 1024.0 {
                            a.powi(b.re as i32)
                        } else {
                            a.powc(b)
                        }
                    }
                }
            }
            Expr::Call(f, a) => {
                let a = a.eval(z)?;
                match f {
                    Func::Exp => a.exp(),
                    Func::Log => a.ln(),
                    Func::Sqrt => a.sqrt(),
                    Func::Sin => a.sin(),
                    Func::Cos => a.cos(),
                    Func::Tan => a.tan(),
                    Func::Sinh => a.sinh(),
                    Func::Cosh => a.cosh(),
                    Func::Csc => a.sin().inv(),
                    Func::Cot => a.cos() / a.sin(),
                    Func::Gamma => gamma(a)?,
                    Func::J0 => j0_series(a),
                }
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Sym(char),
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Num(x) => write!(f, "{x}"),
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Sym(c) => write!(f, "{c}"),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = src.chars().collect();
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
            // exponent part
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let save = i;
                i += 1;
                if i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                    i += 1;
                }
                if i < chars.len() && chars[i].is_ascii_digit() {
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                } else {
                    i = save;
                }
            }
            let s: String = chars[start..i].iter().collect();
            let v = s.parse::<f64>().map_err(|_| Error::Parse(format!("bad number `{s}`")))?;
            out.push(Tok::Num(v));
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
            return Err(Error::Parse(format!("unexpected character `{c}`")));
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

    fn sum(&mut self) -> Result<Expr> {
        let mut e = self.product()?;
        loop {
            if self.eat('+') {
                e = Expr::Bin(Op::Add, Box::new(e), Box::new(self.product()?));
            } else if self.eat('-') {
                e = Expr::Bin(Op::Sub, Box::new(e), Box::new(self.product()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut e = self.unary()?;
        loop {
            if self.eat('*') {
                e = Expr::Bin(Op::Mul, Box::new(e), Box::new(self.unary()?));
            } else if self.eat('/') {
                e = Expr::Bin(Op::Div, Box::new(e), Box::new(self.unary()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    // Right-associative; binds tighter than unary minus on its left.
    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            let exp = self.unary()?;
            return Ok(Expr::Bin(Op::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let tok = self.peek().cloned().ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Tok::Num(v) => Ok(Expr::Num(C::from(v))),
            Tok::Sym('(') => {
                let e = self.sum()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "z" | "t" | "x" | "lambda" => Ok(Expr::Var),
                "i" => Ok(Expr::Num(C::new(0.0, 1.0))),
                "pi" => Ok(Expr::Num(C::from(PI))),
                "e" => Ok(Expr::Num(C::from(E))),
                _ => {
                    let f = Func::lookup(&name).ok_or_else(|| Error::Parse(format!("unknown name `{name}`")))?;
                    if !self.eat('(') {
                        return Err(Error::Parse(format!("`{name}` needs an argument list")));
                    }
                    let arg = self.sum()?;
                    if !self.eat(')') {
                        return Err(Error::Parse("missing `)`".into()));
                    }
                    Ok(Expr::Call(f, Box::new(arg)))
                }
            },
            Tok::Sym(c) => Err(Error::Parse(format!("unexpected `{c}`"))),
        }
    }
}
