//! Arithmetic in `GF(q²)`, `q = p^h`, with the involution `x ↦ x^q`, plus the
//! prime field `F_p` used as the code alphabet.
//!
//! Elements of `GF(q²)` are labelled by their polynomial representative over
//! `GF(p)`: the label of `c_0 + c_1 x + … + c_{d-1} x^{d-1}` is
//! `c_0 + c_1 p + … + c_{d-1} p^{d-1}`. Label 0 is zero and label 1 is one,
//! and the constants `0..p` embed `GF(p)` as the labels `0..p`.
//!
//! Multiplication goes through exp/log tables of the pinned primitive
//! polynomial; addition uses a Zech logarithm table, so every operation is a
//! couple of lookups.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Largest supported `q²`.
pub const MAX_FIELD_ORDER: u32 = 1 << 16;

/// Pinned primitive polynomials, one per `(p, degree)`: the smallest monic
/// primitive polynomial when coefficients are read as a base-`p` integer.
/// Entries are `(p, degree, low coefficients c_0..c_{d-1})`; the polynomial is
/// `x^d + c_{d-1} x^{d-1} + … + c_0`. Changing any entry relabels elements and
/// therefore invalidates every cache; bump [`crate::CODE_VERSION`] if you do.
const PRIMITIVE_POLYNOMIALS: &[(u32, u32, &[u8])] = &[
    (2, 2, &[1, 1]),
    (2, 4, &[1, 1, 0, 0]),
    (2, 6, &[1, 1, 0, 0, 0, 0]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0]),
    (2, 10, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0]),
    (2, 12, &[1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0]),
    (2, 14, &[1, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0]),
    (2, 16, &[1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
    (3, 2, &[2, 1]),
    (3, 4, &[2, 1, 0, 0]),
    (3, 6, &[2, 1, 0, 0, 0, 0]),
    (3, 8, &[2, 0, 0, 1, 0, 0, 0, 0]),
    (3, 10, &[2, 1, 0, 1, 0, 0, 0, 0, 0, 0]),
    (5, 2, &[2, 1]),
    (5, 4, &[2, 2, 1, 0]),
    (5, 6, &[2, 1, 0, 0, 0, 0]),
    (7, 2, &[3, 1]),
    (7, 4, &[5, 3, 1, 0]),
];

const NO_LOG: u32 = u32::MAX;

/// An element of `GF(q²)`, identified by its polynomial label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps a label without range checking; callers keep it below `q²`.
    #[inline]
    pub(crate) const fn from_raw(label: u16) -> FieldElement {
        FieldElement(label)
    }

    #[inline]
    pub fn label(self) -> u16 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Arithmetic tables of `GF(q²)` together with the conjugation `x ↦ x^q`.
///
/// Immutable after construction.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    p: u32,
    h: u32,
    q: u32,
    q2: u32,
    poly: &'static [u8],
    // exp is stored twice over so that log sums never need a reduction
    exp: Vec<u16>,
    log: Vec<u32>,
    zech: Vec<u32>,
    neg: Vec<u16>,
    conj: Vec<u16>,
}

impl FieldCtx {
    /// Builds `GF(q²)` for `q = p^h`.
    pub fn new(p: u32, h: u32) -> Result<Self> {
        if !matches!(p, 2 | 3 | 5 | 7) {
            return Err(Error::UnsupportedField { p, h, reason: "p must be one of 2, 3, 5, 7" });
        }
        if h == 0 {
            return Err(Error::UnsupportedField { p, h, reason: "h must be positive" });
        }
        let degree = 2 * h;
        let q2 = (p as u64).checked_pow(degree).filter(|&v| v <= MAX_FIELD_ORDER as u64);
        let q2 = match q2 {
            Some(v) => v as u32,
            None => return Err(Error::UnsupportedField { p, h, reason: "q² must not exceed 2^16" }),
        };
        let poly = PRIMITIVE_POLYNOMIALS
            .iter()
            .find(|(pp, d, _)| *pp == p && *d == degree)
            .map(|(_, _, c)| *c)
            .ok_or(Error::UnsupportedField { p, h, reason: "no pinned polynomial" })?;
        let q = p.pow(h);
        let order = q2 - 1;
        let d = degree as usize;

        let mut exp = vec![0u16; 2 * order as usize];
        let mut log = vec![NO_LOG; q2 as usize];
        let mut cur = vec![0u8; d];
        cur[0] = 1;
        for e in 0..order {
            let label = digits_to_label(&cur, p);
            if log[label as usize] != NO_LOG {
                return Err(Error::Invariant(format!(
                    "pinned polynomial for p={p}, degree={degree} is not primitive"
                )));
            }
            log[label as usize] = e;
            exp[e as usize] = label;
            exp[(e + order) as usize] = label;
            // cur <- cur * x mod poly
            let top = cur[d - 1] as u32;
            for k in (1..d).rev() {
                cur[k] = cur[k - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for k in 0..d {
                    cur[k] = ((cur[k] as u32 + p * p - top * poly[k] as u32) % p) as u8;
                }
            }
        }

        let neg: Vec<u16> = (0..q2)
            .map(|a| {
                let digits = label_to_digits(a as u16, p, d);
                let negated: Vec<u8> = digits.iter().map(|&c| ((p - c as u32) % p) as u8).collect();
                digits_to_label(&negated, p)
            })
            .collect();

        // zech[k] = log(1 + x^k), or NO_LOG when 1 + x^k = 0
        let zech: Vec<u32> = (0..order)
            .map(|k| {
                let s = add_labels(1, exp[k as usize], p, d);
                if s == 0 {
                    NO_LOG
                } else {
                    log[s as usize]
                }
            })
            .collect();

        let mut ctx = FieldCtx { p, h, q, q2, poly, exp, log, zech, neg, conj: Vec::new() };
        ctx.conj = (0..q2).map(|a| ctx.pow(FieldElement(a as u16), q as u64).0).collect();
        Ok(ctx)
    }

    /// Builds the field from `q²` directly (must be an even power of a supported prime).
    pub fn from_order(q2: u32) -> Result<Self> {
        for p in [2u32, 3, 5, 7] {
            let mut v = 1u64;
            let mut e = 0;
            while v < q2 as u64 {
                v *= p as u64;
                e += 1;
            }
            if v == q2 as u64 && e > 0 {
                if e % 2 != 0 {
                    return Err(Error::UnsupportedField { p, h: 0, reason: "order is not a square" });
                }
                return Self::new(p, e / 2);
            }
        }
        Err(Error::UnsupportedField { p: 0, h: 0, reason: "order is not a power of 2, 3, 5 or 7" })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    /// Order of the fixed subfield `GF(q)`.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Order of the field, `q²`.
    pub fn order(&self) -> u32 {
        self.q2
    }

    /// Low coefficients of the pinned primitive polynomial.
    pub fn polynomial(&self) -> &'static [u8] {
        self.poly
    }

    /// Stable identifier of the pinned polynomial, e.g. `"2^2:x^2+x+1"`.
    pub fn polynomial_id(&self) -> String {
        let d = self.poly.len();
        let mut s = format!("{}^{}:x^{}", self.p, d, d);
        for k in (0..d).rev() {
            let c = self.poly[k];
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && k > 0 { String::new() } else { format!("{c}") };
            match k {
                0 => s.push_str(&format!("+{c}")),
                1 => s.push_str(&format!("+{coeff}x")),
                _ => s.push_str(&format!("+{coeff}x^{k}")),
            }
        }
        s
    }

    /// Checks a label and wraps it as an element.
    pub fn element(&self, label: u32) -> Result<FieldElement> {
        if label < self.q2 {
            Ok(FieldElement(label as u16))
        } else {
            Err(Error::ElementOutOfRange(label))
        }
    }

    /// Image of the integer `k` under `Z → GF(p) ⊂ GF(q²)`.
    pub fn from_int(&self, k: i64) -> FieldElement {
        FieldElement(k.rem_euclid(self.p as i64) as u16)
    }

    /// All elements in label order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q2).map(|a| FieldElement(a as u16))
    }

    /// A fixed generator of the multiplicative group (the class of `x`).
    pub fn primitive_element(&self) -> FieldElement {
        FieldElement(self.exp[1])
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let order = self.q2 - 1;
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let k = if lb >= la { lb - la } else { lb + order - la };
        match self.zech[k as usize] {
            NO_LOG => FieldElement::ZERO,
            z => FieldElement(self.exp[(la + z) as usize]),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        FieldElement(self.exp[s as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let order = self.q2 - 1;
        let l = self.log[a.0 as usize];
        Ok(FieldElement(self.exp[((order - l) % order) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, k: u64) -> FieldElement {
        if k == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let order = (self.q2 - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        let e = ((l as u128 * k as u128) % order as u128) as usize;
        FieldElement(self.exp[e])
    }

    /// `a^q`, the non-trivial involution of `GF(q²)` over `GF(q)`.
    #[inline]
    pub fn conj(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.conj[a.0 as usize])
    }

    /// `a^{q+1} = a · conj(a)`, which lies in `GF(q)`.
    #[inline]
    pub fn norm(&self, a: FieldElement) -> FieldElement {
        self.mul(a, self.conj(a))
    }

    /// True iff `a` lies in the subfield `GF(q)`.
    pub fn in_subfield(&self, a: FieldElement) -> bool {
        self.conj(a) == a
    }

    /// Some `w` with `w^{q+1} = -1`.
    pub fn norm_minus_one(&self) -> FieldElement {
        let target = self.neg(FieldElement::ONE);
        self.elements()
            .find(|&w| self.norm(w) == target)
            .expect("the norm map is onto GF(q)*")
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElement) -> Result<u32> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let order = self.q2 - 1;
        let l = self.log[a.0 as usize];
        Ok(order / gcd(order, l))
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn digits_to_label(digits: &[u8], p: u32) -> u16 {
    digits.iter().rev().fold(0u32, |acc, &c| acc * p + c as u32) as u16
}

fn label_to_digits(mut label: u16, p: u32, d: usize) -> Vec<u8> {
    let mut out = vec![0u8; d];
    for slot in out.iter_mut() {
        *slot = (label as u32 % p) as u8;
        label = (label as u32 / p) as u16;
    }
    out
}

fn add_labels(a: u16, b: u16, p: u32, d: usize) -> u16 {
    let da = label_to_digits(a, p, d);
    let db = label_to_digits(b, p, d);
    let sum: Vec<u8> = da.iter().zip(&db).map(|(&x, &y)| ((x as u32 + y as u32) % p) as u8).collect();
    digits_to_label(&sum, p)
}

/// The prime field `F_p`, the alphabet of the dual code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u8,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !matches!(p, 2 | 3 | 5 | 7) {
            return Err(Error::UnsupportedField { p, h: 1, reason: "p must be one of 2, 3, 5, 7" });
        }
        Ok(PrimeField { p: p as u8 })
    }

    pub fn p(self) -> u8 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.p as u16) as u8
    }

    pub fn inv(self, a: u8) -> Result<u8> {
        if a % self.p == 0 {
            return Err(Error::DivisionByZero);
        }
        // a^{p-2}
        let mut r = 1u8;
        for _ in 0..self.p - 2 {
            r = self.mul(r, a);
        }
        Ok(r)
    }

    pub fn from_int(self, k: i64) -> u8 {
        k.rem_euclid(self.p as i64) as u8
    }

    /// Nonzero elements `1..p`.
    pub fn units(self) -> impl Iterator<Item = u8> {
        1..self.p
    }
}
