//! Free-group words over single-letter generators, word tuples and their parser.
//!
//! Generators are lowercase ASCII letters; the uppercase letter is the inverse
//! (`X` is `x^-1`). A tuple is a comma-separated list of words, see [`parse`].

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A basis element of the free group, named by a lowercase ASCII letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Generator(u8);

impl Generator {
    pub fn new(index: usize) -> Option<Self> {
        (index < 26).then_some(Generator(index as u8))
    }

    pub fn from_name(c: char) -> Option<Self> {
        c.is_ascii_lowercase().then(|| Generator(c as u8 - b'a'))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn name(self) -> char {
        (b'a' + self.0) as char
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(generator: Generator) -> Self {
        Letter { generator, inverse: false }
    }

    pub fn neg(generator: Generator) -> Self {
        Letter { generator, inverse: true }
    }

    /// +1 or -1.
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }

    fn render(self) -> char {
        let c = self.generator.name();
        if self.inverse {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }
}

/// An element of the free group written as a sequence of letters.
///
/// Constructors do not reduce; every operation in this module that returns a
/// word returns it freely reduced.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord { letters: Vec::new() }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        FreeWord { letters }
    }

    pub fn letter(l: Letter) -> Self {
        FreeWord { letters: vec![l] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.reduce().is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|p| !p[0].cancels(p[1]))
    }

    /// Free reduction with a stack; idempotent.
    pub fn reduce(&self) -> FreeWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match out.last() {
                Some(&top) if top.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        FreeWord { letters: out }
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced()
            && match (self.letters.first(), self.letters.last()) {
                (Some(&a), Some(&b)) if self.letters.len() > 1 => !a.cancels(b),
                _ => true,
            }
    }

    /// Returns `(core, conjugator)` with `self = conjugator · core · conjugator⁻¹`
    /// and `core` cyclically reduced. Expects a reduced word.
    pub fn cyclically_reduce(&self) -> (FreeWord, FreeWord) {
        let w = self.reduce();
        let n = w.letters.len();
        let mut k = 0;
        while 2 * k + 1 < n && w.letters[k].cancels(w.letters[n - 1 - k]) {
            k += 1;
        }
        (FreeWord { letters: w.letters[k..n - k].to_vec() }, FreeWord { letters: w.letters[..k].to_vec() })
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }.reduce()
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        FreeWord { letters }.reduce()
    }

    pub fn power(&self, k: i64) -> FreeWord {
        let base = if k < 0 { self.inverse() } else { self.reduce() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        FreeWord { letters }.reduce()
    }

    /// `[u, v] = u v u⁻¹ v⁻¹`.
    pub fn commutator(u: &FreeWord, v: &FreeWord) -> FreeWord {
        u.concat(v).concat(&u.inverse()).concat(&v.inverse())
    }

    /// Cyclic rotation moving the first `k` letters to the end (not reduced).
    pub fn rotate(&self, k: usize) -> FreeWord {
        if self.letters.is_empty() {
            return self.clone();
        }
        let mut letters = self.letters.clone();
        letters.rotate_left(k % self.letters.len());
        FreeWord { letters }
    }

    /// Applies the endomorphism sending each generator `g` to `image(g)`.
    pub fn substitute(&self, image: impl Fn(Generator) -> FreeWord) -> FreeWord {
        let mut letters = Vec::new();
        for l in &self.letters {
            let img = image(l.generator);
            if l.inverse {
                letters.extend(img.letters.iter().rev().map(|x| x.inv()));
            } else {
                letters.extend_from_slice(&img.letters);
            }
        }
        FreeWord { letters }.reduce()
    }

    /// Sum of exponents per generator (the image in the abelianization).
    pub fn exponent_sums(&self) -> BTreeMap<Generator, i64> {
        let mut sums = BTreeMap::new();
        for l in &self.letters {
            *sums.entry(l.generator).or_insert(0) += l.sign();
        }
        sums
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            write!(f, "{}", l.render())?;
        }
        Ok(())
    }
}

/// An ordered tuple of non-trivial reduced words plus the number of identity
/// words that were dropped from it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WordTuple {
    words: Vec<FreeWord>,
    trivial: usize,
}

impl WordTuple {
    /// Reduces every word and moves identity words into the trivial count.
    pub fn new(words: impl IntoIterator<Item = FreeWord>) -> Self {
        let mut out = Vec::new();
        let mut trivial = 0;
        for w in words {
            let r = w.reduce();
            if r.is_empty() {
                trivial += 1;
            } else {
                out.push(r);
            }
        }
        WordTuple { words: out, trivial }
    }

    pub fn single(w: FreeWord) -> Self {
        WordTuple::new([w])
    }

    pub fn words(&self) -> &[FreeWord] {
        &self.words
    }

    pub fn trivial(&self) -> usize {
        self.trivial
    }

    /// Number of words, counting identity words.
    pub fn len(&self) -> usize {
        self.words.len() + self.trivial
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The same tuple with the identity words forgotten.
    pub fn nontrivial_part(&self) -> WordTuple {
        WordTuple { words: self.words.clone(), trivial: 0 }
    }

    pub fn map_words(&self, f: impl Fn(&FreeWord) -> FreeWord) -> WordTuple {
        let mut t = WordTuple::new(self.words.iter().map(f));
        t.trivial += self.trivial;
        t
    }

    pub fn generators(&self) -> Vec<Generator> {
        let mut gens: Vec<Generator> = self.words.iter().flat_map(|w| w.letters.iter().map(|l| l.generator)).collect();
        gens.sort();
        gens.dedup();
        gens
    }

    pub fn total_letters(&self) -> usize {
        self.words.iter().map(FreeWord::len).sum()
    }

    /// Whether `w_1 ⋯ w_ℓ` lies in the commutator subgroup.
    pub fn is_balanced(&self) -> bool {
        let mut sums: BTreeMap<Generator, i64> = BTreeMap::new();
        for w in &self.words {
            for (g, s) in w.exponent_sums() {
                *sums.entry(g).or_insert(0) += s;
            }
        }
        sums.values().all(|&s| s == 0)
    }

    pub fn all_cyclically_reduced(&self) -> bool {
        self.words.iter().all(FreeWord::is_cyclically_reduced)
    }
}

impl fmt::Display for WordTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.words.iter().map(|w| w.to_string()).collect();
        parts.extend(std::iter::repeat_n("1".to_string(), self.trivial));
        write!(f, "{}", parts.join(","))
    }
}

/// Position of a letter: word index and letter index within the word, both 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LetterPosition {
    pub word: usize,
    pub letter: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorStats {
    pub generator: Generator,
    /// Occurrences of `x^{+1}` in word-then-letter order.
    pub positive: Vec<LetterPosition>,
    /// Occurrences of `x^{-1}` in word-then-letter order.
    pub negative: Vec<LetterPosition>,
}

impl GeneratorStats {
    /// `L_x`, the number of positive occurrences.
    pub fn count(&self) -> usize {
        self.positive.len()
    }

    pub fn balanced(&self) -> bool {
        self.positive.len() == self.negative.len()
    }
}

/// Letter statistics, one entry per generator that occurs, in generator order.
pub fn letter_stats(t: &WordTuple) -> Vec<GeneratorStats> {
    let mut map: BTreeMap<Generator, GeneratorStats> = BTreeMap::new();
    for (wi, w) in t.words.iter().enumerate() {
        for (li, l) in w.letters.iter().enumerate() {
            let e = map.entry(l.generator).or_insert_with(|| GeneratorStats {
                generator: l.generator,
                positive: Vec::new(),
                negative: Vec::new(),
            });
            let p = LetterPosition { word: wi, letter: li };
            if l.inverse {
                e.negative.push(p);
            } else {
                e.positive.push(p);
            }
        }
    }
    map.into_values().collect()
}

/// First unbalanced generator, as an error.
pub fn check_balanced(stats: &[GeneratorStats]) -> Result<()> {
    match stats.iter().find(|s| !s.balanced()) {
        None => Ok(()),
        Some(s) => Err(Error::Unbalanced {
            generator: s.generator.name(),
            positive: s.positive.len(),
            negative: s.negative.len(),
        }),
    }
}

/// Parses a word tuple.
///
/// ```text
/// tuple  := word (',' word)*
/// word   := '1' | factor+
/// factor := atom power?
/// power  := '^' ('-'? digits)
/// atom   := lowercase | uppercase | '[' word ',' word ']' | '(' word ')'
/// ```
///
/// Whitespace is ignored and `[u,v]` expands to `u v u⁻¹ v⁻¹`.
pub fn parse(text: &str) -> Result<WordTuple> {
    let mut p = Parser::new(text);
    let mut words = vec![p.word()?];
    while p.eat(',') {
        words.push(p.word()?);
    }
    if let Some((pos, c)) = p.peek() {
        return Err(Error::Syntax { pos, msg: format!("unexpected {c:?}") });
    }
    Ok(WordTuple::new(words))
}

/// Parses a single word; a tuple of length other than one is an error.
pub fn parse_word(text: &str) -> Result<FreeWord> {
    let mut p = Parser::new(text);
    let w = p.word()?;
    if let Some((pos, c)) = p.peek() {
        return Err(Error::Syntax { pos, msg: format!("unexpected {c:?}") });
    }
    Ok(w)
}

pub const GRAMMAR: &str = "\
tuple  := word (',' word)*
word   := '1' | factor+
factor := atom power?
power  := '^' ('-'? digits)
atom   := lowercase | uppercase | '[' word ',' word ']' | '(' word ')'
lowercase letters are generators, uppercase letters their inverses (X = x^-1);
[u,v] is the commutator u v u^-1 v^-1; whitespace is ignored.";

struct Parser {
    chars: Vec<(usize, char)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Parser { chars, at: 0, end: text.len() }
    }

    fn peek(&self) -> Option<(usize, char)> {
        self.chars.get(self.at).copied()
    }

    fn pos(&self) -> usize {
        self.peek().map_or(self.end, |(p, _)| p)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek().map(|(_, d)| d) == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |(_, d)| format!("{d:?}"));
            Err(Error::Syntax { pos: self.pos(), msg: format!("expected {c:?}, found {found}") })
        }
    }

    fn word(&mut self) -> Result<FreeWord> {
        if self.eat('1') {
            return Ok(FreeWord::identity());
        }
        let mut w = self.factor()?;
        while let Some((_, c)) = self.peek() {
            if c == ',' || c == ']' || c == ')' {
                break;
            }
            w = w.concat(&self.factor()?);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<FreeWord> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let start = self.pos();
            let mut digits = String::new();
            while let Some((_, c)) = self.peek().filter(|(_, c)| c.is_ascii_digit()) {
                digits.push(c);
                self.at += 1;
            }
            if digits.is_empty() {
                return Err(Error::Syntax { pos: start, msg: "expected exponent digits".into() });
            }
            let k: i64 = digits.parse().map_err(|_| Error::Syntax { pos: start, msg: "exponent too large".into() })?;
            return Ok(base.power(if neg { -k } else { k }));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<FreeWord> {
        let Some((pos, c)) = self.peek() else {
            return Err(Error::Syntax { pos: self.end, msg: "unexpected end of input".into() });
        };
        match c {
            'a'..='z' => {
                self.at += 1;
                Ok(FreeWord::letter(Letter::pos(Generator::from_name(c).unwrap())))
            }
            'A'..='Z' => {
                self.at += 1;
                let g = Generator::from_name(c.to_ascii_lowercase()).unwrap();
                Ok(FreeWord::letter(Letter::neg(g)))
            }
            '[' => {
                self.at += 1;
                let u = self.word()?;
                self.expect(',')?;
                let v = self.word()?;
                self.expect(']')?;
                Ok(FreeWord::commutator(&u, &v))
            }
            '(' => {
                self.at += 1;
                let w = self.word()?;
                self.expect(')')?;
                Ok(w)
            }
            c if c.is_alphabetic() => Err(Error::UnknownGenerator { pos, name: c }),
            c => Err(Error::Syntax { pos, msg: format!("unexpected {c:?}") }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> FreeWord {
        parse_word(s).unwrap()
    }

    #[test]
    fn commutator_expands() {
        let t = parse("[x,y]").unwrap();
        assert_eq!(t.words().len(), 1);
        assert_eq!(t.words()[0].to_string(), "xyXY");
    }

    #[test]
    fn identity_words_are_counted() {
        let t = parse("xX").unwrap();
        assert!(t.words().is_empty());
        assert_eq!(t.trivial(), 1);
        let t = parse("1, [x,y], yY").unwrap();
        assert_eq!(t.words().len(), 1);
        assert_eq!(t.trivial(), 2);
        assert_eq!(t.to_string(), "xyXY,1,1");
    }

    #[test]
    fn two_word_tuple_letter_counts() {
        let t = parse("x^2y^2,xy^-3x^-3y").unwrap();
        assert_eq!(t.words().len(), 2);
        let stats = letter_stats(&t);
        assert_eq!(stats.len(), 2);
        // x: positives x,x (w1) and x (w2); y: positives y,y (w1) and y (w2)
        assert_eq!(stats[0].count(), 3);
        assert_eq!(stats[1].count(), 3);
        assert!(stats.iter().all(|s| s.balanced()));
    }

    #[test]
    fn reduce_examples() {
        assert!(FreeWord::from_letters(w("x").letters().iter().chain(w("X").letters()).copied().collect())
            .reduce()
            .is_empty());
        let g = |c| Generator::from_name(c).unwrap();
        let raw = FreeWord::from_letters(vec![
            Letter::pos(g('x')),
            Letter::pos(g('y')),
            Letter::neg(g('y')),
            Letter::pos(g('x')),
        ]);
        assert_eq!(raw.reduce(), w("x^2"));
        assert_eq!(w("[x,y]").reduce(), w("[x,y]"));
    }

    #[test]
    fn cyclic_reduction() {
        let (core, conj) = w("xyX").cyclically_reduce();
        assert_eq!(core, w("y"));
        assert_eq!(conj, w("x"));
        let (core, conj) = w("[x,y]").cyclically_reduce();
        assert_eq!(core, w("[x,y]"));
        assert!(conj.is_empty());
        // x^2 (y x y^-1) x^-2 is conjugate to x by x^2 y.
        let src = w("x^2yxYx^-2");
        let (core, conj) = src.cyclically_reduce();
        assert_eq!(conj, w("x^2y"));
        assert_eq!(core, w("x"));
        assert!(core.is_cyclically_reduced());
        assert_eq!(conj.concat(&core).concat(&conj.inverse()), src);
    }

    #[test]
    fn invert_power_concat() {
        assert_eq!(w("[x,y]").inverse(), w("[y,x]"));
        assert_eq!(w("[y,x]").to_string(), "yxYX");
        assert_eq!(w("x").power(3), w("xxx"));
        assert!(w("x").concat(&w("X")).is_empty());
        assert!(w("[x,y]").power(0).is_empty());
    }

    #[test]
    fn letter_stats_examples() {
        let s = letter_stats(&parse("[x,y]").unwrap());
        assert_eq!((s[0].count(), s[1].count()), (1, 1));
        assert!(s.iter().all(|g| g.balanced()));
        let s = letter_stats(&parse("x^2y").unwrap());
        assert_eq!(s[0].count(), 2);
        assert!(s[0].negative.is_empty());
        assert!(check_balanced(&s).is_err());
        let s = letter_stats(&parse("[x,y]^3").unwrap());
        assert_eq!((s[0].count(), s[1].count()), (3, 3));
        assert_eq!(s[0].positive[1], LetterPosition { word: 0, letter: 4 });
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse("[x,y"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("x^"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse("x,"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("x+y"), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse("xé"), Err(Error::UnknownGenerator { name: 'é', .. })));
        assert!(matches!(parse(""), Err(Error::Syntax { .. })));
    }

    #[test]
    fn grammar_forms() {
        assert_eq!(parse_word("x^-2").unwrap(), w("XX"));
        assert_eq!(parse_word("(xy)^2").unwrap(), w("xyxy"));
        assert_eq!(parse_word("[x^3, y]").unwrap(), w("xxxyXXXY"));
        assert_eq!(parse_word("[x,y][x,z]").unwrap().to_string(), "xyXYxzXZ");
        assert_eq!(parse_word(" x y X ").unwrap(), w("xyX"));
    }

    #[test]
    fn balanced_matches_exponent_sums() {
        assert!(parse("[x,y]^2").unwrap().is_balanced());
        assert!(parse("xy, YX").unwrap().is_balanced());
        assert!(!parse("x^2y").unwrap().is_balanced());
    }
}
