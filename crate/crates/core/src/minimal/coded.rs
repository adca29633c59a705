//! Elements of `E_P` and their codes as naturals.
//!
//! An atom `n` has code `2n`; a pair `(a, α)` has code
//! `2⟨set(a), code(α)⟩ + 1`. A finite set `{c_1 < ... < c_n}` of codes is
//! numbered through the gap list `c_1, c_2 − c_1 − 1, ...`, with the empty
//! list at 0 and `h :: t` at `⟨h, list(t)⟩ + 1`. All three codings are
//! bijective, so every natural is the code of exactly one element tree.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::completion::Element;
use crate::error::{Error, Result};
use crate::natural::{cantor_pair, cantor_unpair};
use crate::pair::Atom;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CodedElement {
    /// An element `p_k^{x+1}` of `P`.
    Atom(u128),
    /// `args` sorted and duplicate free.
    Pair(Vec<CodedElement>, Box<CodedElement>),
}

impl CodedElement {
    pub fn pair(args: impl IntoIterator<Item = CodedElement>, res: CodedElement) -> Self {
        let mut args: Vec<CodedElement> = args.into_iter().collect();
        args.sort();
        args.dedup();
        CodedElement::Pair(args, Box::new(res))
    }

    pub fn as_atom(&self) -> Option<u128> {
        match self {
            CodedElement::Atom(n) => Some(*n),
            CodedElement::Pair(..) => None,
        }
    }

    pub fn rank(&self) -> u32 {
        match self {
            CodedElement::Atom(_) => 0,
            CodedElement::Pair(args, res) => 1 + args.iter().chain(std::iter::once(&**res)).map(Self::rank).max().unwrap(),
        }
    }

    pub fn code(&self) -> BigUint {
        match self {
            CodedElement::Atom(n) => BigUint::from(*n) << 1u32,
            CodedElement::Pair(args, res) => {
                let mut codes: Vec<BigUint> = args.iter().map(Self::code).collect();
                codes.sort();
                (cantor_pair(&set_code(&codes), &res.code()) << 1u32) + 1u32
            }
        }
    }

    pub fn decode(code: &BigUint) -> Result<CodedElement> {
        if !code.bit(0) {
            let n = (code >> 1u32).to_u128().ok_or_else(|| Error::Overflow(format!("atom code {code}")))?;
            return Ok(CodedElement::Atom(n));
        }
        let (set, res) = cantor_unpair(&(code >> 1u32));
        let args = set_members(&set).iter().map(Self::decode).collect::<Result<Vec<_>>>()?;
        Ok(CodedElement::pair(args, Self::decode(&res)?))
    }

    pub fn from_element(e: &Element) -> CodedElement {
        match e.as_pair() {
            None => CodedElement::Atom(e.as_base().unwrap().0),
            Some((args, res)) => CodedElement::pair(args.iter().map(Self::from_element), Self::from_element(res)),
        }
    }

    pub fn to_element(&self) -> Element {
        match self {
            CodedElement::Atom(n) => Element::base(Atom(*n)),
            CodedElement::Pair(args, res) => Element::pair(args.iter().map(Self::to_element), res.to_element()),
        }
    }
}

impl fmt::Display for CodedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_element(), f)
    }
}

/// Number of a finite set given by its sorted, distinct members.
fn set_code(sorted: &[BigUint]) -> BigUint {
    let mut gaps = Vec::with_capacity(sorted.len());
    let mut prev: Option<&BigUint> = None;
    for c in sorted {
        gaps.push(match prev {
            None => c.clone(),
            Some(p) => c - p - 1u32,
        });
        prev = Some(c);
    }
    gaps.iter().rev().fold(BigUint::zero(), |tail, h| cantor_pair(h, &tail) + 1u32)
}

fn set_members(code: &BigUint) -> Vec<BigUint> {
    let mut out: Vec<BigUint> = Vec::new();
    let mut rest = code.clone();
    while !rest.is_zero() {
        let (h, t) = cantor_unpair(&(rest - BigUint::one()));
        let next = match out.last() {
            None => h,
            Some(p) => p + h + 1u32,
        };
        out.push(next);
        rest = t;
    }
    out
}
