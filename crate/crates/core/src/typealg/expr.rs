//! Type expressions over first-order leaves, with an s-expression syntax:
//! `(leaf 1)`, `(dual E)`, `(tensor E E)`, `(hom E E)`.

use std::fmt;

use super::IOSets;
use crate::boolfun::BoolFun;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TypeExpr {
    /// 1-based leaf index.
    Leaf(usize),
    Dual(Box<TypeExpr>),
    Tensor(Box<TypeExpr>, Box<TypeExpr>),
}

impl TypeExpr {
    pub fn leaf(i: usize) -> TypeExpr {
        TypeExpr::Leaf(i)
    }

    pub fn dual(e: TypeExpr) -> TypeExpr {
        TypeExpr::Dual(Box::new(e))
    }

    pub fn tensor(a: TypeExpr, b: TypeExpr) -> TypeExpr {
        TypeExpr::Tensor(Box::new(a), Box::new(b))
    }

    /// `a ⊸ b = (a ⊗ b*)*`.
    pub fn hom(a: TypeExpr, b: TypeExpr) -> TypeExpr {
        TypeExpr::dual(TypeExpr::tensor(a, TypeExpr::dual(b)))
    }

    /// Leaf indices in left-to-right order.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<usize>) {
        match self {
            TypeExpr::Leaf(i) => out.push(*i),
            TypeExpr::Dual(e) => e.collect(out),
            TypeExpr::Tensor(a, b) => {
                a.collect(out);
                b.collect(out);
            }
        }
    }

    pub fn n(&self) -> usize {
        self.leaves().len()
    }

    /// Every index of `[n]` occurs exactly once.
    pub fn validate(&self) -> Result<()> {
        let leaves = self.leaves();
        let n = leaves.len();
        let mut seen = vec![false; n + 1];
        for &i in &leaves {
            if i == 0 || i > n {
                return Err(Error::Parse(format!("leaf index {i} outside [1, {n}]")));
            }
            if seen[i] {
                return Err(Error::Parse(format!("leaf index {i} repeated")));
            }
            seen[i] = true;
        }
        Ok(())
    }
}

impl fmt::Display for TypeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeExpr::Leaf(i) => write!(f, "(leaf {i})"),
            TypeExpr::Dual(e) => write!(f, "(dual {e})"),
            TypeExpr::Tensor(a, b) => write!(f, "(tensor {a} {b})"),
        }
    }
}

fn tokenize(s: &str) -> Vec<String> {
    s.replace('(', " ( ").replace(')', " ) ").split_whitespace().map(str::to_string).collect()
}

struct Parser {
    toks: Vec<String>,
    pos: usize,
}

impl Parser {
    fn next(&mut self) -> Result<String> {
        let t = self.toks.get(self.pos).cloned().ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, want: &str) -> Result<()> {
        let t = self.next()?;
        if t != want {
            return Err(Error::Parse(format!("expected `{want}`, found `{t}`")));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<TypeExpr> {
        self.expect("(")?;
        let head = self.next()?;
        let e = match head.as_str() {
            "leaf" => {
                let t = self.next()?;
                let i = t.parse::<usize>().map_err(|_| Error::Parse(format!("bad leaf index `{t}`")))?;
                TypeExpr::Leaf(i)
            }
            "dual" => TypeExpr::dual(self.expr()?),
            "tensor" => {
                let a = self.expr()?;
                TypeExpr::tensor(a, self.expr()?)
            }
            "hom" => {
                let a = self.expr()?;
                TypeExpr::hom(a, self.expr()?)
            }
            other => return Err(Error::Parse(format!("unknown form `{other}`"))),
        };
        self.expect(")")?;
        Ok(e)
    }
}

/// Parse and validate an s-expression.
pub fn parse_expr(s: &str) -> Result<TypeExpr> {
    let mut p = Parser { toks: tokenize(s), pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input `{}`", p.toks[p.pos..].join(" "))));
    }
    e.validate()?;
    Ok(e)
}

impl std::str::FromStr for TypeExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_expr(s)
    }
}

/// Type function of an expression, with argument `i` standing for leaf `i`.
pub fn expr_to_type(e: &TypeExpr) -> Result<(BoolFun, IOSets)> {
    e.validate()?;
    // evaluate with arguments in leaf order, then move them to their indices
    fn eval(e: &TypeExpr) -> Result<(BoolFun, u32)> {
        Ok(match e {
            TypeExpr::Leaf(_) => (BoolFun::one(1)?, 1),
            TypeExpr::Dual(c) => {
                let (f, o) = eval(c)?;
                (f.star(), !o & crate::boolfun::full_mask(f.n()))
            }
            TypeExpr::Tensor(a, b) => {
                let (f, oa) = eval(a)?;
                let (g, ob) = eval(b)?;
                let k = f.n();
                (f.tensor(&g)?, oa | ob << k)
            }
        })
    }
    let (f, o) = eval(e)?;
    let leaves = e.leaves();
    let order: Vec<usize> = leaves.iter().map(|i| i - 1).collect();
    let f = f.align(&order)?;
    let outputs = crate::boolfun::map_mask(o, &order);
    Ok((f.clone(), IOSets { outputs, inputs: crate::boolfun::full_mask(f.n()) & !outputs }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::typealg::{gamma, io_sets};

    #[test]
    fn parse_and_print() {
        let e = parse_expr("(hom (leaf 1) (leaf 2))").unwrap();
        assert_eq!(e.to_string(), "(dual (tensor (leaf 1) (dual (leaf 2))))");
        assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
        assert!(parse_expr("(leaf 2)").is_err());
        assert!(parse_expr("(tensor (leaf 1) (leaf 1))").is_err());
        assert!(parse_expr("(tensor (leaf 1)").is_err());
        assert!(parse_expr("(leaf 1) x").is_err());
        assert!(parse_expr("(foo 1)").is_err());
    }

    #[test]
    fn leaf_and_dual() {
        let (f, io) = expr_to_type(&TypeExpr::leaf(1)).unwrap();
        assert_eq!((f, io), (BoolFun::one(1).unwrap(), IOSets { outputs: 1, inputs: 0 }));
        let (f, io) = expr_to_type(&TypeExpr::dual(TypeExpr::leaf(1))).unwrap();
        assert_eq!((f, io), (BoolFun::p(1).unwrap(), IOSets { outputs: 0, inputs: 1 }));
    }

    #[test]
    fn channel_type() {
        let (f, io) = expr_to_type(&parse_expr("(hom (leaf 1) (leaf 2))").unwrap()).unwrap();
        assert_eq!(f.table(), vec![1, 0, 1, 1]);
        assert_eq!(io, IOSets { outputs: 0b10, inputs: 0b01 });
        assert_eq!(io, io_sets(&f));
        let (g, _) = expr_to_type(&parse_expr("(hom (leaf 2) (leaf 1))").unwrap()).unwrap();
        assert_eq!(g, gamma(2).unwrap());
    }

    #[test]
    fn leaf_order_is_respected() {
        // channel-to-channel supermap: outputs are the inner input 2 and the outer output 1
        let e = parse_expr("(hom (hom (leaf 2) (leaf 3)) (hom (leaf 4) (leaf 1)))").unwrap();
        let (f, io) = expr_to_type(&e).unwrap();
        assert_eq!(io, io_sets(&f));
        assert_eq!(io.outputs, 0b0011);
    }
}
