//! Hash-consed completion elements.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::pair::{Atom, PartialPair};

/// An element of a completion `E_A`: an atom of `A` or an uncoded pair
/// `(a, α)` with `a` a finite set of elements.
///
/// Elements are interned, so equality and hashing are O(1). The order is
/// structural: atoms before pairs, atoms by number, pairs by their sorted
/// argument lists (lexicographically) and then by result.
#[derive(Clone)]
pub struct Element(Arc<Node>);

struct Node {
    kind: Kind,
    rank: u32,
    hash: u64,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Kind {
    Base(Atom),
    Pair(Arc<[Element]>, Element),
}

fn interner() -> &'static Mutex<HashMap<Kind, Element>> {
    static TABLE: OnceLock<Mutex<HashMap<Kind, Element>>> = OnceLock::new();
    TABLE.get_or_init(Default::default)
}

fn intern(kind: Kind, rank: u32) -> Element {
    let mut table = interner().lock().expect("interner poisoned");
    if let Some(e) = table.get(&kind) {
        return e.clone();
    }
    let mut h = std::hash::DefaultHasher::new();
    kind.hash(&mut h);
    let e = Element(Arc::new(Node { kind: kind.clone(), rank, hash: h.finish() }));
    table.insert(kind, e.clone());
    e
}

impl Element {
    pub fn base(a: Atom) -> Element {
        intern(Kind::Base(a), 0)
    }

    /// The raw pair constructor. It does not consult any coding; use
    /// [`super::Completion::apply_coding`] to stay inside a completion.
    pub fn pair(args: impl IntoIterator<Item = Element>, res: Element) -> Element {
        let mut args: Vec<Element> = args.into_iter().collect();
        args.sort();
        args.dedup();
        let rank = 1 + args.iter().chain(std::iter::once(&res)).map(Element::rank).max().unwrap_or(0);
        intern(Kind::Pair(args.into(), res), rank)
    }

    pub fn rank(&self) -> u32 {
        self.0.rank
    }

    pub fn as_base(&self) -> Option<Atom> {
        match &self.0.kind {
            Kind::Base(a) => Some(*a),
            Kind::Pair(..) => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&[Element], &Element)> {
        match &self.0.kind {
            Kind::Base(_) => None,
            Kind::Pair(args, res) => Some((args, res)),
        }
    }

    pub fn is_base(&self) -> bool {
        self.as_base().is_some()
    }

    /// Prints atoms by their labels in `p`.
    pub fn render(&self, p: &PartialPair) -> String {
        let mut out = String::new();
        self.write(&mut out, &|a| p.label(a));
        out
    }

    fn write(&self, out: &mut String, label: &dyn Fn(Atom) -> String) {
        match &self.0.kind {
            Kind::Base(a) => out.push_str(&label(*a)),
            Kind::Pair(args, res) => {
                out.push_str("({");
                for (i, e) in args.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    e.write(out, label);
                }
                out.push_str("},");
                res.write(out, label);
                out.push(')');
            }
        }
    }

    /// Parses element syntax, resolving labels against `p` (plain atom
    /// numbers are accepted too). The result is not checked against the
    /// coding; see [`super::Completion::validate_element`].
    pub fn parse(text: &str, p: &PartialPair) -> Result<Element> {
        let by_label: HashMap<String, Atom> = p.atoms().iter().map(|&a| (p.label(a), a)).collect();
        let mut parser = ElementParser { text, pos: 0, by_label: &by_label, pair: p };
        let e = parser.element()?;
        parser.skip_ws();
        if parser.pos != text.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(e)
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Eq for Element {}

impl Hash for Element {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash)
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        match (&self.0.kind, &other.0.kind) {
            (Kind::Base(a), Kind::Base(b)) => a.cmp(b),
            (Kind::Base(_), Kind::Pair(..)) => Ordering::Less,
            (Kind::Pair(..), Kind::Base(_)) => Ordering::Greater,
            (Kind::Pair(a, r), Kind::Pair(b, s)) => a[..].cmp(&b[..]).then_with(|| r.cmp(s)),
        }
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        self.write(&mut out, &|a| a.to_string());
        f.write_str(&out)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct ElementParser<'a> {
    text: &'a str,
    pos: usize,
    by_label: &'a HashMap<String, Atom>,
    pair: &'a PartialPair,
}

impl ElementParser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax { position: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn element(&mut self) -> Result<Element> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                self.expect('{')?;
                let mut args = Vec::new();
                if self.peek() != Some('}') {
                    args.push(self.element()?);
                    while self.peek() == Some(',') {
                        self.pos += 1;
                        args.push(self.element()?);
                    }
                }
                self.expect('}')?;
                self.expect(',')?;
                let res = self.element()?;
                self.expect(')')?;
                Ok(Element::pair(args, res))
            }
            Some(_) => {
                let start = self.pos;
                let rest = &self.text[start..];
                let len = rest
                    .find(|c: char| "(){},".contains(c) || c.is_whitespace())
                    .unwrap_or(rest.len());
                if len == 0 {
                    return Err(self.error("expected an element"));
                }
                let label = &rest[..len];
                let atom = self
                    .by_label
                    .get(label)
                    .copied()
                    .or_else(|| label.parse::<u128>().ok().map(Atom).filter(|a| self.pair.contains(*a)))
                    .ok_or_else(|| self.error(&format!("unknown atom `{label}`")))?;
                self.pos += len;
                Ok(Element::base(atom))
            }
            None => Err(self.error("expected an element")),
        }
    }
}
