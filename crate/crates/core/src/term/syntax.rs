use std::collections::BTreeSet;
use std::fmt;

/// An untyped λ-term with named variables.
///
/// Structural equality is syntactic; use [`alpha_eq`] for equality up to
/// renaming of bound variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Abs(String, Box<Term>),
    App(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn abs(binder: impl Into<String>, body: Term) -> Term {
        Term::Abs(binder.into(), Box::new(body))
    }

    /// `\x1 x2 ... xn. body`
    pub fn abs_many<S: Into<String>>(binders: impl IntoIterator<Item = S>, body: Term) -> Term {
        let binders: Vec<String> = binders.into_iter().map(Into::into).collect();
        binders
            .into_iter()
            .rev()
            .fold(body, |acc, b| Term::Abs(b, Box::new(acc)))
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        Term::App(Box::new(fun), Box::new(arg))
    }

    /// Left-associated application `head a1 a2 ... an`.
    pub fn apply(head: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(head, Term::app)
    }

    /// Number of syntax nodes: variables, abstractions and applications each count one.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Abs(_, b) => 1 + b.size(),
            Term::App(f, a) => 1 + f.size() + a.size(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        fn go(t: &Term, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
            match t {
                Term::Var(x) => {
                    if !bound.iter().any(|b| b == x) {
                        out.insert(x.clone());
                    }
                }
                Term::Abs(x, b) => {
                    bound.push(x.clone());
                    go(b, bound, out);
                    bound.pop();
                }
                Term::App(f, a) => {
                    go(f, bound, out);
                    go(a, bound, out);
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Every identifier occurring in the term, bound or free.
    pub fn names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            match t {
                Term::Var(x) => {
                    out.insert(x.clone());
                }
                Term::Abs(x, b) => {
                    out.insert(x.clone());
                    stack.push(b);
                }
                Term::App(f, a) => {
                    stack.push(f);
                    stack.push(a);
                }
            }
        }
        out
    }

    pub fn to_nameless(&self) -> Nameless {
        fn go(t: &Term, ctx: &mut Vec<String>) -> Nameless {
            match t {
                Term::Var(x) => match ctx.iter().rev().position(|b| b == x) {
                    Some(i) => Nameless::Bound(i),
                    None => Nameless::Free(x.clone()),
                },
                Term::Abs(x, b) => {
                    ctx.push(x.clone());
                    let body = go(b, ctx);
                    ctx.pop();
                    Nameless::Abs(x.clone(), Box::new(body))
                }
                Term::App(f, a) => Nameless::App(Box::new(go(f, ctx)), Box::new(go(a, ctx))),
            }
        }
        go(self, &mut Vec::new())
    }
}

/// α-equivalence, decided on the nameless form.
pub fn alpha_eq(a: &Term, b: &Term) -> bool {
    a.to_nameless() == b.to_nameless()
}

/// Fresh-name supply `x0, x1, ...`.
pub fn fresh_name(i: usize) -> String {
    format!("x{i}")
}

/// Locally nameless representation: bound variables are de Bruijn indices,
/// free variables keep their names. Binders carry the original name as a
/// printing hint; hints are ignored by equality.
#[derive(Clone, Debug)]
pub enum Nameless {
    Bound(usize),
    Free(String),
    Abs(String, Box<Nameless>),
    App(Box<Nameless>, Box<Nameless>),
}

impl PartialEq for Nameless {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Nameless::Bound(i), Nameless::Bound(j)) => i == j,
            (Nameless::Free(x), Nameless::Free(y)) => x == y,
            (Nameless::Abs(_, b), Nameless::Abs(_, c)) => b == c,
            (Nameless::App(f, a), Nameless::App(g, b)) => f == g && a == b,
            _ => false,
        }
    }
}

impl Eq for Nameless {}

impl Nameless {
    fn free_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Nameless::Bound(_) => {}
            Nameless::Free(x) => {
                out.insert(x.clone());
            }
            Nameless::Abs(_, b) => b.free_names(out),
            Nameless::App(f, a) => {
                f.free_names(out);
                a.free_names(out);
            }
        }
    }

    /// Back to named syntax. Binder hints are kept unless they would clash
    /// with a free name or an enclosing binder, in which case the first
    /// unused `x<i>` is taken.
    pub fn to_named(&self) -> Term {
        fn go(t: &Nameless, ctx: &mut Vec<String>, free: &BTreeSet<String>) -> Term {
            match t {
                Nameless::Bound(i) => Term::Var(ctx[ctx.len() - 1 - i].clone()),
                Nameless::Free(x) => Term::Var(x.clone()),
                Nameless::Abs(hint, b) => {
                    let taken = |n: &str| free.contains(n) || ctx.iter().any(|c| c == n);
                    let name = if !hint.is_empty() && !taken(hint) {
                        hint.clone()
                    } else {
                        (0..).map(fresh_name).find(|n| !taken(n)).unwrap()
                    };
                    ctx.push(name.clone());
                    let body = go(b, ctx, free);
                    ctx.pop();
                    Term::Abs(name, Box::new(body))
                }
                Nameless::App(f, a) => Term::app(go(f, ctx, free), go(a, ctx, free)),
            }
        }
        let mut free = BTreeSet::new();
        self.free_names(&mut free);
        go(self, &mut Vec::new(), &free)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => f.write_str(x),
            Term::Abs(..) => {
                f.write_str("\\")?;
                let mut t = self;
                let mut first = true;
                while let Term::Abs(x, b) = t {
                    if !first {
                        f.write_str(" ")?;
                    }
                    f.write_str(x)?;
                    first = false;
                    t = b;
                }
                write!(f, ".{t}")
            }
            Term::App(fun, arg) => {
                match **fun {
                    Term::Abs(..) => write!(f, "({fun})")?,
                    _ => write!(f, "{fun}")?,
                }
                match **arg {
                    Term::Var(_) => write!(f, " {arg}"),
                    _ => write!(f, " ({arg})"),
                }
            }
        }
    }
}

impl fmt::Display for Nameless {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nameless::Bound(i) => write!(f, "{i}"),
            Nameless::Free(x) => f.write_str(x),
            Nameless::Abs(_, b) => write!(f, "\\.{b}"),
            Nameless::App(g, a) => {
                match **g {
                    Nameless::Abs(..) => write!(f, "({g})")?,
                    _ => write!(f, "{g}")?,
                }
                match **a {
                    Nameless::Bound(_) | Nameless::Free(_) => write!(f, " {a}"),
                    _ => write!(f, " ({a})"),
                }
            }
        }
    }
}

/// The standard combinators.
pub mod combinators {
    use super::Term;

    /// `I ≡ \x.x`
    pub fn identity() -> Term {
        Term::abs("x", Term::var("x"))
    }

    /// `T ≡ \x y.x`
    pub fn truth() -> Term {
        Term::abs_many(["x", "y"], Term::var("x"))
    }

    /// `F ≡ \x y.y`
    pub fn falsity() -> Term {
        Term::abs_many(["x", "y"], Term::var("y"))
    }

    /// `\x.x x`
    pub fn self_apply() -> Term {
        Term::abs("x", Term::app(Term::var("x"), Term::var("x")))
    }

    /// `Ω ≡ (\x.x x)(\x.x x)`
    pub fn omega() -> Term {
        Term::app(self_apply(), self_apply())
    }
}

#[cfg(test)]
mod tests {
    use super::combinators::*;
    use super::*;

    #[test]
    fn alpha_examples() {
        assert!(alpha_eq(&identity(), &Term::abs("y", Term::var("y"))));
        assert!(!alpha_eq(&truth(), &falsity()));
        let a = Term::abs("x", Term::app(Term::var("x"), Term::var("z")));
        let b = Term::abs("y", Term::app(Term::var("y"), Term::var("z")));
        assert!(alpha_eq(&a, &b));
        let c = Term::abs("y", Term::app(Term::var("y"), Term::var("w")));
        assert!(!alpha_eq(&a, &c));
    }

    #[test]
    fn free_variable_not_captured_by_renaming() {
        // \x.\y.x vs \y.\y.y differ; \x.y is open.
        let t = Term::abs("x", Term::var("y"));
        assert_eq!(t.free_vars().into_iter().collect::<Vec<_>>(), vec!["y"]);
        assert!(!t.is_closed());
        assert!(omega().is_closed());
    }

    #[test]
    fn display() {
        assert_eq!(identity().to_string(), "\\x.x");
        assert_eq!(truth().to_string(), "\\x y.x");
        assert_eq!(omega().to_string(), "(\\x.x x) (\\x.x x)");
        let t = Term::apply(Term::var("a"), [Term::var("b"), Term::app(Term::var("c"), Term::var("d"))]);
        assert_eq!(t.to_string(), "a b (c d)");
    }

    #[test]
    fn named_round_trip_avoids_capture() {
        // \y.(\x.\y.x) y  has a shadowed hint `y` inside; converting back must not capture.
        let n = Nameless::Abs(
            "y".into(),
            Box::new(Nameless::Abs("y".into(), Box::new(Nameless::Bound(1)))),
        );
        let t = n.to_named();
        assert_eq!(t.to_nameless(), n);
        assert_eq!(t.to_string(), "\\y x0.y");

        let n = Nameless::Abs("z".into(), Box::new(Nameless::Free("z".into())));
        let t = n.to_named();
        assert_eq!(t.to_nameless(), n);
    }

    #[test]
    fn size_counts_nodes() {
        assert_eq!(identity().size(), 2);
        assert_eq!(omega().size(), 9);
    }
}
