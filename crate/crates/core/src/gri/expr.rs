use std::collections::BTreeSet;
use std::fmt;

use crate::rings::Rational;

/// A generalized rational expression.
///
/// Identifiers are [`Expr::Variable`] unless reclassified by [`Expr::with_constants`];
/// constant values are looked up in an environment at evaluation time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Literal(Rational),
    Constant(String),
    Variable(String),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    /// Integer power; negative exponents invert, exponent 0 is the unit.
    Power(Box<Expr>, i64),
    Neg(Box<Expr>),
}

/// Child indices from the root to a node.
pub type AstPath = Vec<usize>;

impl Expr {
    pub fn var(name: &str) -> Expr {
        Expr::Variable(name.to_string())
    }

    pub fn constant(name: &str) -> Expr {
        Expr::Constant(name.to_string())
    }

    pub fn literal(q: impl Into<Rational>) -> Expr {
        Expr::Literal(q.into())
    }

    pub fn pow(self, e: i64) -> Expr {
        Expr::Power(Box::new(self), e)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }

    /// Product of `factors`, collapsing the one-factor case.
    pub fn product(mut factors: Vec<Expr>) -> Expr {
        match factors.len() {
            0 => Expr::literal(1),
            1 => factors.pop().expect("one factor"),
            _ => Expr::Product(factors),
        }
    }

    pub fn sum(mut terms: Vec<Expr>) -> Expr {
        match terms.len() {
            0 => Expr::literal(0),
            1 => terms.pop().expect("one term"),
            _ => Expr::Sum(terms),
        }
    }

    fn children(&self) -> Vec<&Expr> {
        match self {
            Expr::Literal(_) | Expr::Constant(_) | Expr::Variable(_) => vec![],
            Expr::Sum(xs) | Expr::Product(xs) => xs.iter().collect(),
            Expr::Power(b, _) => vec![b],
            Expr::Neg(x) => vec![x],
        }
    }

    /// Names of all [`Expr::Variable`] nodes, sorted.
    pub fn free_variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        if let Expr::Variable(name) = self {
            out.insert(name.clone());
        }
        for c in self.children() {
            c.collect_vars(out);
        }
    }

    /// Turn every variable whose name is in `names` into a constant.
    pub fn with_constants<'a>(&self, names: impl IntoIterator<Item = &'a str> + Clone) -> Expr {
        self.map_leaves(&|leaf| match leaf {
            Expr::Variable(n) if names.clone().into_iter().any(|c| c == n) => {
                Some(Expr::Constant(n.clone()))
            }
            _ => None,
        })
    }

    /// Simultaneously replace every variable `name` by `replacement`.
    pub fn substitute(&self, name: &str, replacement: &Expr) -> Expr {
        self.map_leaves(&|leaf| match leaf {
            Expr::Variable(n) if n == name => Some(replacement.clone()),
            _ => None,
        })
    }

    fn map_leaves(&self, f: &dyn Fn(&Expr) -> Option<Expr>) -> Expr {
        if let Some(r) = f(self) {
            return r;
        }
        match self {
            Expr::Sum(xs) => Expr::Sum(xs.iter().map(|x| x.map_leaves(f)).collect()),
            Expr::Product(xs) => Expr::Product(xs.iter().map(|x| x.map_leaves(f)).collect()),
            Expr::Power(b, e) => Expr::Power(Box::new(b.map_leaves(f)), *e),
            Expr::Neg(x) => Expr::Neg(Box::new(x.map_leaves(f))),
            leaf => leaf.clone(),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// Node at `path`, if it exists.
    pub fn at(&self, path: &[usize]) -> Option<&Expr> {
        match path.split_first() {
            None => Some(self),
            Some((&i, rest)) => self.children().get(i)?.at(rest),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Slot {
    /// Anywhere an `expr` may appear.
    Expr,
    /// Operand of `*`.
    Term,
    /// Base of `^`.
    Atom,
}

fn write_expr(e: &Expr, slot: Slot, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match e {
        Expr::Literal(q) => {
            if q.is_integer() && !q.is_negative() {
                write!(f, "{q}")
            } else if slot == Slot::Atom {
                write!(f, "({q})")
            } else {
                write!(f, "{q}")
            }
        }
        Expr::Constant(n) | Expr::Variable(n) => f.write_str(n),
        Expr::Sum(xs) => {
            if slot != Slot::Expr {
                f.write_str("(")?;
            }
            for (k, x) in xs.iter().enumerate() {
                match (k, x) {
                    (0, _) => write_expr(x, Slot::Term, f)?,
                    (_, Expr::Neg(inner)) => {
                        f.write_str(" - ")?;
                        write_expr(inner, Slot::Term, f)?;
                    }
                    _ => {
                        f.write_str(" + ")?;
                        write_expr(x, Slot::Term, f)?;
                    }
                }
            }
            if slot != Slot::Expr {
                f.write_str(")")?;
            }
            Ok(())
        }
        Expr::Product(xs) => {
            if slot == Slot::Atom {
                f.write_str("(")?;
            }
            for (k, x) in xs.iter().enumerate() {
                if k > 0 {
                    f.write_str("*")?;
                }
                // a nested product is parenthesized so the tree shape survives
                if matches!(x, Expr::Product(_)) {
                    f.write_str("(")?;
                    write_expr(x, Slot::Term, f)?;
                    f.write_str(")")?;
                } else {
                    write_expr(x, Slot::Term, f)?;
                }
            }
            if slot == Slot::Atom {
                f.write_str(")")?;
            }
            Ok(())
        }
        Expr::Power(b, k) => {
            if slot == Slot::Atom {
                f.write_str("(")?;
            }
            write_expr(b, Slot::Atom, f)?;
            write!(f, "^{k}")?;
            if slot == Slot::Atom {
                f.write_str(")")?;
            }
            Ok(())
        }
        Expr::Neg(x) => {
            if slot == Slot::Atom {
                f.write_str("(")?;
            }
            f.write_str("-")?;
            match x.as_ref() {
                Expr::Constant(_) | Expr::Variable(_) | Expr::Power(..) => {
                    write_expr(x, Slot::Term, f)?
                }
                Expr::Literal(q) if !q.is_negative() => write!(f, "{q}")?,
                _ => {
                    f.write_str("(")?;
                    write_expr(x, Slot::Expr, f)?;
                    f.write_str(")")?;
                }
            }
            if slot == Slot::Atom {
                f.write_str(")")?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(self, Slot::Expr, f)
    }
}

/// Concrete syntax for `e`; parses back to an expression that evaluates identically.
pub fn format_expr(e: &Expr) -> String {
    e.to_string()
}
