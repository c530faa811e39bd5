//! Free quandles on `k` generators, realized inside the free group.
//!
//! An element is `w·g_i·w⁻¹`, stored as the pair `(w, i)` with `w` freely
//! reduced and not ending in `g_i^{±1}` (the centralizer of `g_i` is `⟨g_i⟩`).
//! The operation is conjugation: `a ▷ b = a·b·a⁻¹`.
//!
//! Distances are certified: a bidirectional BFS over a finite set of movers
//! gives an upper bound, and the abelianization gives a lower bound.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::ratlinalg::Rational;

const NAMES: [char; 4] = ['x', 'y', 'z', 'w'];

/// A freely reduced word. Letter `+(i+1)` is `g_i`, `−(i+1)` is `g_i⁻¹`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeWord {
    letters: Vec<i32>,
}

impl FreeWord {
    pub fn empty() -> Self {
        FreeWord::default()
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce(letters: &[i32]) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(letters.len());
        for &l in letters {
            assert!(l != 0, "0 is not a letter");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord { letters: out }
    }

    /// `g_i^e`.
    pub fn power(generator: usize, e: i64) -> Self {
        let l = generator as i32 + 1;
        let letter = if e < 0 { -l } else { l };
        FreeWord {
            letters: vec![letter; e.unsigned_abs() as usize],
        }
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord {
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    pub fn concat(&self, other: &FreeWord) -> Self {
        let mut v = self.letters.clone();
        v.extend_from_slice(&other.letters);
        FreeWord::reduce(&v)
    }

    pub fn repeat(&self, m: usize) -> Self {
        FreeWord::reduce(&self.letters.repeat(m))
    }

    /// Exponent sum of generator `i`.
    pub fn exponent_sum(&self, generator: usize) -> i64 {
        let l = generator as i32 + 1;
        self.letters
            .iter()
            .map(|&x| match x {
                x if x == l => 1,
                x if x == -l => -1,
                _ => 0,
            })
            .sum()
    }

    /// Image in `Z^k`.
    pub fn abelianization(&self, k: usize) -> Vec<i64> {
        (0..k).map(|i| self.exponent_sum(i)).collect()
    }

    /// Occurrences of `pattern` minus occurrences of its inverse, as
    /// contiguous subwords.
    pub fn count_difference(&self, pattern: &FreeWord) -> i64 {
        let count = |p: &[i32]| {
            if p.is_empty() || p.len() > self.letters.len() {
                return 0;
            }
            self.letters.windows(p.len()).filter(|w| *w == p).count() as i64
        };
        count(&pattern.letters) - count(&pattern.inverse().letters)
    }

    /// Parses letters `x y z w` (capitals are inverses), powers `x^3`,
    /// `y^-2`, parenthesized groups `(xy)^3`, and `1`/`e` for the empty word.
    pub fn parse(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().collect();
        let mut pos = 0;
        let letters = parse_seq(&chars, &mut pos, text)?;
        if pos != chars.len() {
            return Err(Error::parse(
                1,
                pos + 1,
                format!("unexpected {:?} in {text:?}", chars[pos]),
            ));
        }
        Ok(FreeWord::reduce(&letters))
    }
}

fn parse_seq(chars: &[char], pos: &mut usize, text: &str) -> Result<Vec<i32>> {
    let mut out = Vec::new();
    while *pos < chars.len() {
        let c = chars[*pos];
        let unit: Vec<i32> = match c {
            ' ' | '\t' | '*' | '.' => {
                *pos += 1;
                continue;
            }
            ')' => break,
            '1' | 'e' => {
                *pos += 1;
                Vec::new()
            }
            '(' => {
                *pos += 1;
                let inner = parse_seq(chars, pos, text)?;
                if chars.get(*pos) != Some(&')') {
                    return Err(Error::parse(
                        1,
                        *pos + 1,
                        format!("unclosed '(' in {text:?}"),
                    ));
                }
                *pos += 1;
                inner
            }
            _ => {
                let lower = c.to_ascii_lowercase();
                let Some(g) = NAMES.iter().position(|&n| n == lower) else {
                    return Err(Error::parse(
                        1,
                        *pos + 1,
                        format!("unknown letter {c:?} in {text:?}"),
                    ));
                };
                *pos += 1;
                let l = g as i32 + 1;
                vec![if c.is_ascii_uppercase() { -l } else { l }]
            }
        };
        let mut exp: i64 = 1;
        if chars.get(*pos) == Some(&'^') {
            *pos += 1;
            let start = *pos;
            if chars.get(*pos) == Some(&'-') {
                *pos += 1;
            }
            while chars.get(*pos).is_some_and(char::is_ascii_digit) {
                *pos += 1;
            }
            let digits: String = chars[start..*pos].iter().collect();
            exp = digits
                .parse()
                .map_err(|_| Error::parse(1, start + 1, format!("bad exponent in {text:?}")))?;
        }
        let block: Vec<i32> = if exp < 0 {
            unit.iter().rev().map(|&l| -l).collect()
        } else {
            unit
        };
        for _ in 0..exp.unsigned_abs() {
            out.extend_from_slice(&block);
        }
    }
    Ok(out)
}

fn letter_name(l: i32) -> String {
    let g = (l.unsigned_abs() - 1) as usize;
    match NAMES.get(g) {
        Some(&c) if l > 0 => c.to_string(),
        Some(&c) => c.to_ascii_uppercase().to_string(),
        None if l > 0 => format!("g{g} "),
        None => format!("g{g}^-1 "),
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        // run-length with ^ for runs longer than 2
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let run = j - i;
            let name = letter_name(l.abs());
            if run > 2 {
                let e = if l < 0 { -(run as i64) } else { run as i64 };
                write!(f, "{name}^{e}")?;
            } else {
                for _ in 0..run {
                    f.write_str(&letter_name(l))?;
                }
            }
            i = j;
        }
        Ok(())
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Canonical free-quandle element `w·g_i·w⁻¹`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FQElement {
    conjugator: FreeWord,
    generator: usize,
}

impl FQElement {
    pub fn basepoint(generator: usize) -> Self {
        FQElement {
            conjugator: FreeWord::empty(),
            generator,
        }
    }

    pub fn conjugator(&self) -> &FreeWord {
        &self.conjugator
    }

    pub fn generator(&self) -> usize {
        self.generator
    }

    /// Parses `WORD@GEN`, e.g. `y^3@x`.
    pub fn parse(text: &str) -> Result<Self> {
        let (word, gen) = text
            .rsplit_once('@')
            .ok_or_else(|| Error::parse(1, 1, format!("expected WORD@GEN, got {text:?}")))?;
        let gen = gen.trim();
        let g = match gen.chars().collect::<Vec<_>>()[..] {
            [c] => NAMES.iter().position(|&n| n == c),
            _ => None,
        }
        .ok_or_else(|| Error::parse(1, word.len() + 2, format!("unknown generator {gen:?}")))?;
        Ok(canonical(&FreeWord::parse(word)?, g))
    }
}

impl fmt::Display for FQElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}@{}",
            self.conjugator,
            letter_name(self.generator as i32 + 1)
        )
    }
}

impl fmt::Debug for FQElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for FQElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn reduce(letters: &[i32]) -> FreeWord {
    FreeWord::reduce(letters)
}

/// Strips trailing `g_i^{±1}` letters: `w g_i^m · g_i · g_i^{−m} w⁻¹ = w g_i w⁻¹`.
pub fn canonical(word: &FreeWord, generator: usize) -> FQElement {
    let l = generator as i32 + 1;
    let mut letters = word.letters.clone();
    while letters.last().is_some_and(|&x| x == l || x == -l) {
        letters.pop();
    }
    FQElement {
        conjugator: FreeWord { letters },
        generator,
    }
}

/// `ψ_a^{sign}(b)`: conjugator `w_a g^{±1} w_a⁻¹ w_b`.
fn act(a: &FQElement, b: &FQElement, inverse: bool) -> FQElement {
    let wa = &a.conjugator.letters;
    let l = a.generator as i32 + 1;
    let mut letters = Vec::with_capacity(2 * wa.len() + 1 + b.conjugator.len());
    letters.extend_from_slice(wa);
    letters.push(if inverse { -l } else { l });
    letters.extend(wa.iter().rev().map(|&x| -x));
    letters.extend_from_slice(&b.conjugator.letters);
    canonical(&FreeWord::reduce(&letters), b.generator)
}

pub fn fq_op(a: &FQElement, b: &FQElement) -> FQElement {
    act(a, b, false)
}

/// `ψ_a⁻¹(b)`.
pub fn fq_op_inv(a: &FQElement, b: &FQElement) -> FQElement {
    act(a, b, true)
}

/// All canonical elements on `k` generators with conjugator length at most `max_len`.
pub fn movers(k: usize, max_len: usize) -> Vec<FQElement> {
    let mut words = vec![FreeWord::empty()];
    let mut layer = vec![FreeWord::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for g in 0..k as i32 {
                for l in [g + 1, -(g + 1)] {
                    if w.letters.last() != Some(&-l) {
                        let mut v = w.letters.clone();
                        v.push(l);
                        next.push(FreeWord { letters: v });
                    }
                }
            }
        }
        words.extend(next.iter().cloned());
        layer = next;
    }
    let mut out: Vec<FQElement> = (0..k)
        .flat_map(|g| {
            words
                .iter()
                .filter(move |w| {
                    w.letters
                        .last()
                        .is_none_or(|&x| x.unsigned_abs() as usize != g + 1)
                })
                .map(move |w| FQElement {
                    conjugator: w.clone(),
                    generator: g,
                })
        })
        .collect();
    out.sort();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FqCaps {
    /// Maximum number of moves explored.
    pub radius: usize,
    /// Movers are the elements with conjugator length at most this.
    pub conj_len: usize,
    pub max_nodes: usize,
}

impl Default for FqCaps {
    fn default() -> Self {
        FqCaps {
            radius: 6,
            conj_len: 1,
            max_nodes: 2_000_000,
        }
    }
}

/// Elements reachable from the basepoints by at most `radius` moves.
#[derive(Clone, Debug, Serialize)]
pub struct Ball {
    pub generators: usize,
    pub radius: usize,
    pub conj_len: usize,
    /// In BFS discovery order.
    pub elements: Vec<FQElement>,
    /// Number of moves at which each element was first reached.
    pub depth: Vec<u32>,
}

impl Ball {
    /// Largest certified lower bound on the distance from the basepoint of
    /// `generator` to an element of the ball in its component.
    pub fn certified_radius(&self, generator: usize) -> u32 {
        let base = FQElement::basepoint(generator);
        self.elements
            .iter()
            .filter(|e| e.generator == generator)
            .map(|e| abelian_lower_bound(&base, e, self.generators).unwrap_or(0))
            .max()
            .unwrap_or(0)
    }
}

pub fn ball(k: usize, radius: usize, conj_len: usize) -> Result<Ball> {
    ball_with(
        k,
        FqCaps {
            radius,
            conj_len,
            ..FqCaps::default()
        },
        Exec::default(),
    )
}

/// Level-synchronous BFS; each frontier is expanded under `exec` and merged
/// in frontier order.
pub fn ball_with(k: usize, caps: FqCaps, exec: Exec) -> Result<Ball> {
    let moves = movers(k, caps.conj_len);
    let mut elements: Vec<FQElement> = (0..k).map(FQElement::basepoint).collect();
    let mut depth = vec![0; k];
    let mut seen: HashSet<FQElement> = elements.iter().cloned().collect();
    let mut frontier = elements.clone();
    for level in 1..=caps.radius {
        let expanded: Vec<Vec<FQElement>> = exec.map_slice(&frontier, |b| {
            moves
                .iter()
                .flat_map(|s| [fq_op(s, b), fq_op_inv(s, b)])
                .collect()
        });
        let mut next = Vec::new();
        for e in expanded.into_iter().flatten() {
            if seen.insert(e.clone()) {
                if seen.len() > caps.max_nodes {
                    return Err(Error::CapExceeded(format!(
                        "ball exceeds {} elements at radius {level}",
                        caps.max_nodes
                    )));
                }
                next.push(e.clone());
                elements.push(e);
                depth.push(level as u32);
            }
        }
        frontier = next;
    }
    Ok(Ball {
        generators: k,
        radius: caps.radius,
        conj_len: caps.conj_len,
        elements,
        depth,
    })
}

/// Every move left-multiplies the conjugator by a conjugate of some
/// `g_j^{±1}`, shifting its abelianization by `±e_j`; trailing `g_i` letters
/// are absorbed. So `Σ_{j≠i} |ab_j(w_a⁻¹ w_b)|` is a lower bound.
pub fn abelian_lower_bound(a: &FQElement, b: &FQElement, k: usize) -> Result<u32> {
    if a.generator != b.generator {
        return Err(Error::DifferentComponents(a.to_string(), b.to_string()));
    }
    let diff = a.conjugator.inverse().concat(&b.conjugator);
    let k = k.max(a.generator + 1).max(max_generator(&diff));
    Ok(diff
        .abelianization(k)
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != a.generator)
        .map(|(_, v)| v.unsigned_abs() as u32)
        .sum())
}

fn max_generator(w: &FreeWord) -> usize {
    w.letters
        .iter()
        .map(|l| l.unsigned_abs() as usize)
        .max()
        .unwrap_or(0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DistanceBracket {
    pub lower: u32,
    /// `None` when the search hit its caps without connecting the elements.
    pub upper: Option<u32>,
}

impl DistanceBracket {
    pub fn exact(&self) -> Option<u32> {
        (self.upper == Some(self.lower)).then_some(self.lower)
    }
}

pub fn fq_distance(
    a: &FQElement,
    b: &FQElement,
    k: usize,
    caps: FqCaps,
) -> Result<DistanceBracket> {
    fq_distance_with(a, b, k, caps, Exec::default())
}

/// Bidirectional BFS over the movers of conjugator length `≤ caps.conj_len`,
/// stopping as soon as the upper bound meets the abelianization lower bound.
pub fn fq_distance_with(
    a: &FQElement,
    b: &FQElement,
    k: usize,
    caps: FqCaps,
    exec: Exec,
) -> Result<DistanceBracket> {
    let lower = abelian_lower_bound(a, b, k)?;
    if a == b {
        return Ok(DistanceBracket {
            lower: 0,
            upper: Some(0),
        });
    }
    let k = k
        .max(a.generator + 1)
        .max(max_generator(&a.conjugator))
        .max(max_generator(&b.conjugator));
    let moves = movers(k, caps.conj_len);
    // the move set is closed under inverses, so both sides expand alike
    let mut dist_a: HashMap<FQElement, u32> = HashMap::from([(a.clone(), 0)]);
    let mut dist_b: HashMap<FQElement, u32> = HashMap::from([(b.clone(), 0)]);
    let mut front_a = vec![a.clone()];
    let mut front_b = vec![b.clone()];
    let (mut depth_a, mut depth_b) = (0u32, 0u32);
    let mut best: Option<u32> = None;
    while (depth_a + depth_b) < caps.radius as u32 && !front_a.is_empty() && !front_b.is_empty() {
        let expand_a = front_a.len() <= front_b.len();
        let (front, dist, other, depth) = if expand_a {
            (&mut front_a, &mut dist_a, &dist_b, &mut depth_a)
        } else {
            (&mut front_b, &mut dist_b, &dist_a, &mut depth_b)
        };
        *depth += 1;
        let expanded: Vec<Vec<FQElement>> = exec.map_slice(front, |e| {
            moves
                .iter()
                .flat_map(|s| [fq_op(s, e), fq_op_inv(s, e)])
                .collect()
        });
        let mut next = Vec::new();
        for e in expanded.into_iter().flatten() {
            if dist.contains_key(&e) {
                continue;
            }
            if let Some(&d) = other.get(&e) {
                let total = *depth + d;
                best = Some(best.map_or(total, |b| b.min(total)));
            }
            dist.insert(e.clone(), *depth);
            next.push(e);
        }
        *front = next;
        if best.is_some() {
            break;
        }
        if dist_a.len() + dist_b.len() > caps.max_nodes {
            break;
        }
    }
    Ok(DistanceBracket { lower, upper: best })
}

/// The quasimorphism `φ̂(g x g⁻¹) = φ(g')` with `g = g' x^m` and `φ` the
/// exponent sum of the element's own generator. Canonical conjugators
/// already end in another letter, so `g'` is the stored conjugator.
pub fn hat_phi(a: &FQElement) -> i64 {
    a.conjugator.exponent_sum(a.generator)
}

/// Brooks-type variant: `φ` counts occurrences of `pattern` minus those of
/// its inverse in `g'`. Its defect is only measured, not certified.
pub fn hat_brooks(a: &FQElement, pattern: &FreeWord) -> i64 {
    a.conjugator.count_difference(pattern)
}

/// `max |f(b) − f(ψ_s^{±1}(b))|` over the sample and movers.
pub fn quasimorphism_defect<F>(f: F, sample: &[FQElement], movers: &[FQElement]) -> Rational
where
    F: Fn(&FQElement) -> Rational + Sync + Send,
{
    quasimorphism_defect_with(f, sample, movers, Exec::default())
}

pub fn quasimorphism_defect_with<F>(
    f: F,
    sample: &[FQElement],
    movers: &[FQElement],
    exec: Exec,
) -> Rational
where
    F: Fn(&FQElement) -> Rational + Sync + Send,
{
    let zero = Rational::from_integer(0.into());
    exec.map_slice(sample, |b| {
        let fb = f(b);
        movers
            .iter()
            .flat_map(|s| [fq_op(s, b), fq_op_inv(s, b)])
            .map(|c| {
                let d = &fb - f(&c);
                if d < zero {
                    -d
                } else {
                    d
                }
            })
            .max()
            .unwrap_or_else(|| zero.clone())
    })
    .into_iter()
    .max()
    .unwrap_or(zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    const X: i32 = 1;
    const Y: i32 = 2;

    fn el(s: &str) -> FQElement {
        FQElement::parse(s).unwrap()
    }

    #[test]
    fn reduction() {
        assert_eq!(reduce(&[X, Y, -Y]).letters(), &[X]);
        assert!(reduce(&[]).is_empty());
        assert_eq!(reduce(&[X, X, X]).len(), 3);
        let w = reduce(&[X, Y, -Y, -X, Y]);
        assert_eq!(FreeWord::reduce(w.letters()), w);
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(canonical(&reduce(&[X]), 0), FQElement::basepoint(0));
        let yx = canonical(&reduce(&[Y]), 0);
        assert_eq!(yx.conjugator().letters(), &[Y]);
        assert_eq!(canonical(&reduce(&[Y, X]), 0), yx);
    }

    #[test]
    fn operation() {
        let x = FQElement::basepoint(0);
        let y = FQElement::basepoint(1);
        assert_eq!(fq_op(&x, &y), el("x@y"));
        assert_eq!(fq_op(&x, &x), x);
        assert_eq!(fq_op(&y, &fq_op(&y, &x)), el("y^2@x"));
        assert_eq!(fq_op_inv(&y, &fq_op(&y, &x)), x);
    }

    #[test]
    fn parsing_and_display() {
        assert_eq!(el("yyy@x"), el("y^3@x"));
        assert_eq!(el("(xy)^2@x").conjugator().letters(), &[X, Y, X, Y]);
        assert_eq!(el("x^-2 Y@y"), el("XX@y"));
        assert_eq!(el("1@x"), FQElement::basepoint(0));
        assert_eq!(el("@y"), FQElement::basepoint(1));
        assert_eq!(el("y^3@x").to_string(), "y^3@x");
        assert_eq!(el("xY@x").to_string(), "xY@x");
        assert!(FQElement::parse("yq@x").is_err());
        assert!(FQElement::parse("y").is_err());
        assert!(FQElement::parse("y@q").is_err());
    }

    #[test]
    fn small_ball() {
        let b = ball(2, 0, 0).unwrap();
        assert_eq!(
            b.elements,
            vec![FQElement::basepoint(0), FQElement::basepoint(1)]
        );
        let b = ball(2, 1, 0).unwrap();
        let xs: HashSet<FQElement> = b
            .elements
            .iter()
            .filter(|e| e.generator() == 0)
            .cloned()
            .collect();
        let expected: HashSet<FQElement> = [el("@x"), el("y@x"), el("Y@x")].into_iter().collect();
        assert_eq!(xs, expected);
    }

    #[test]
    fn distances() {
        let x = FQElement::basepoint(0);
        assert_eq!(
            fq_distance(&x, &el("y@x"), 2, FqCaps::default())
                .unwrap()
                .exact(),
            Some(1)
        );
        assert_eq!(
            fq_distance(&x, &x, 2, FqCaps::default()).unwrap().exact(),
            Some(0)
        );
        assert_eq!(
            fq_distance(&x, &el("y^3@x"), 2, FqCaps::default())
                .unwrap()
                .exact(),
            Some(3)
        );
        assert!(matches!(
            fq_distance(&x, &FQElement::basepoint(1), 2, FqCaps::default()),
            Err(Error::DifferentComponents(..))
        ));
    }

    #[test]
    fn lower_bounds() {
        let x = FQElement::basepoint(0);
        assert_eq!(abelian_lower_bound(&x, &el("y^3@x"), 2).unwrap(), 3);
        // x^5 is absorbed entirely into the centralizer
        assert_eq!(
            abelian_lower_bound(&x, &canonical(&FreeWord::power(0, 5), 0), 2).unwrap(),
            0
        );
        assert_eq!(abelian_lower_bound(&x, &el("yxy@x"), 2).unwrap(), 2);
    }

    #[test]
    fn hat_phi_values() {
        assert_eq!(hat_phi(&FQElement::basepoint(0)), 0);
        assert_eq!(hat_phi(&el("(xy)^3@x")), 3);
        assert_eq!(hat_phi(&el("y^5@x")), 0);
    }

    #[test]
    fn zero_function_has_zero_defect() {
        let sample = ball(2, 2, 0).unwrap().elements;
        let d = quasimorphism_defect(|_| Rational::from_integer(0.into()), &sample, &movers(2, 1));
        assert_eq!(d, Rational::from_integer(0.into()));
    }

    #[test]
    fn mover_enumeration() {
        // L = 0: the two basepoints; L = 1: (1, y, Y)@x and (1, x, X)@y
        assert_eq!(movers(2, 0).len(), 2);
        assert_eq!(movers(2, 1).len(), 6);
        assert!(movers(2, 2)
            .iter()
            .all(|m| canonical(m.conjugator(), m.generator()) == *m));
    }
}
