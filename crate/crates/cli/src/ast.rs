//! Expression trees and their canonical printing.

use std::fmt;

use num_bigint::BigInt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    Theta,
    Eps,
    D,
    Z,
    Zeps,
    DTheta,
    Dz,
}

impl Symbol {
    pub const ALL: [Symbol; 7] = [
        Symbol::Theta,
        Symbol::Eps,
        Symbol::D,
        Symbol::Z,
        Symbol::Zeps,
        Symbol::DTheta,
        Symbol::Dz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Symbol::Theta => "theta",
            Symbol::Eps => "eps",
            Symbol::D => "D",
            Symbol::Z => "z",
            Symbol::Zeps => "zeps",
            Symbol::DTheta => "dtheta",
            Symbol::Dz => "dz",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }

    /// Generators that exist only at a root of unity.
    pub fn root_only(self) -> bool {
        matches!(self, Symbol::Z | Symbol::Zeps | Symbol::DTheta | Symbol::Dz)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }

    fn text(self) -> &'static str {
        match self {
            BinOp::Add => " + ",
            BinOp::Sub => " - ",
            BinOp::Mul => "*",
            BinOp::Div => "/",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Q,
    Sym(Symbol),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    /// Graded bracket with the grading factor computed from the operands.
    Bracket(Box<Expr>, Box<Expr>),
    QNum(i64),
    QFact(i64),
    /// Divided power `g^(m) = g^m / [m]!`.
    Be(Box<Expr>, u32),
    /// Truncated q-exponential `exp_q(C theta)` up to `theta^order`.
    QExp(Box<Expr>, u32),
}

impl Expr {
    pub fn bin(op: BinOp, a: Expr, b: Expr) -> Self {
        Expr::Bin(op, Box::new(a), Box::new(b))
    }

    /// Binding strength when printed; atoms bind tightest.
    fn precedence(&self) -> u8 {
        match self {
            Expr::Bin(op, ..) => op.precedence(),
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    /// Calls `f` on every node, parents first.
    pub fn visit(&self, f: &mut impl FnMut(&Expr)) {
        f(self);
        match self {
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Be(a, _) | Expr::QExp(a, _) => a.visit(f),
            Expr::Bin(_, a, b) | Expr::Bracket(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Expr::Int(_) | Expr::Q | Expr::Sym(_) | Expr::QNum(_) | Expr::QFact(_) => {}
        }
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        self.visit(&mut |e| {
            if let Expr::Sym(s) = e {
                if !out.contains(s) {
                    out.push(*s);
                }
            }
        });
        out
    }
}

fn write_wrapped(f: &mut fmt::Formatter<'_>, e: &Expr, wrap: bool) -> fmt::Result {
    if wrap {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Q => f.write_str("q"),
            Expr::Sym(s) => f.write_str(s.name()),
            Expr::Neg(a) => {
                f.write_str("-")?;
                write_wrapped(f, a, a.precedence() < 3)
            }
            Expr::Bin(op, a, b) => {
                let p = op.precedence();
                write_wrapped(f, a, a.precedence() < p)?;
                f.write_str(op.text())?;
                // left associative: an equal-precedence right operand needs parens
                write_wrapped(f, b, b.precedence() <= p)
            }
            Expr::Pow(a, e) => {
                write_wrapped(f, a, a.precedence() <= 4)?;
                write!(f, "^{e}")
            }
            Expr::Bracket(a, b) => write!(f, "[{a}, {b}]"),
            Expr::QNum(m) => write!(f, "qnum({m})"),
            Expr::QFact(m) => write!(f, "qfact({m})"),
            Expr::Be(g, m) => write!(f, "be({g}, {m})"),
            Expr::QExp(c, order) => write!(f, "qexp({c}, {order})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: Symbol) -> Expr {
        Expr::Sym(s)
    }

    #[test]
    fn prints_minimal_parentheses() {
        let e = Expr::bin(
            BinOp::Sub,
            Expr::bin(BinOp::Mul, sym(Symbol::D), sym(Symbol::Theta)),
            Expr::bin(BinOp::Mul, Expr::Q, sym(Symbol::Theta)),
        );
        assert_eq!(e.to_string(), "D*theta - q*theta");
        let nested = Expr::bin(
            BinOp::Sub,
            Expr::Q,
            Expr::bin(BinOp::Sub, Expr::Q, Expr::Int(1.into())),
        );
        assert_eq!(nested.to_string(), "q - (q - 1)");
        let pow = Expr::Pow(Box::new(Expr::Neg(Box::new(Expr::Int(1.into())))), 2);
        assert_eq!(pow.to_string(), "(-1)^2");
    }

    #[test]
    fn collects_symbols_once() {
        let e = Expr::bin(
            BinOp::Add,
            sym(Symbol::Z),
            Expr::bin(BinOp::Mul, sym(Symbol::Z), sym(Symbol::Dz)),
        );
        assert_eq!(e.symbols(), vec![Symbol::Z, Symbol::Dz]);
    }
}
