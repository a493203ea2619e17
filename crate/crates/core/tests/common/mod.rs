use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use wordtrace::surface::{MatchingSpace, MatchingTuple, DEFAULT_BUDGET};
use wordtrace::symgrp::{factorial, Permutation};
use wordtrace::trace::{chi_max, trace_laurent, trace_rational};
use wordtrace::words::{FreeWord, Generator, Letter, WordTuple};

pub const CASES: u32 = 256;

pub fn gen(i: usize) -> Generator {
    Generator::new(i).unwrap()
}

pub fn letter(code: u8) -> Letter {
    let g = gen((code / 2) as usize);
    if code.is_multiple_of(2) {
        Letter::pos(g)
    } else {
        Letter::neg(g)
    }
}

pub fn split(letters: &[u8], cuts: &[usize]) -> WordTuple {
    let mut bounds: Vec<usize> = cuts.iter().map(|c| c % (letters.len() + 1)).collect();
    bounds.sort();
    let mut words = Vec::new();
    let mut start = 0;
    for b in bounds.into_iter().chain([letters.len()]) {
        words.push(FreeWord::from_letters(letters[start..b].iter().map(|&c| letter(c)).collect()));
        start = b;
    }
    WordTuple::new(words)
}

/// Rebuilds a tuple from new non-trivial words, keeping the identity words.
pub fn with_trivial(words: Vec<FreeWord>, t: &WordTuple) -> WordTuple {
    WordTuple::new(words.into_iter().chain(std::iter::repeat_n(FreeWord::identity(), t.trivial())))
}

pub fn short_words(t: &WordTuple) -> bool {
    t.words().iter().all(|w| w.len() <= 6)
}

/// Tuples of 1 to 3 words over x, y, z whose letters balance in every
/// generator, with at most 8 letters in total.
pub fn balanced() -> impl Strategy<Value = WordTuple> {
    (1usize..=3)
        .prop_flat_map(|l| ((0usize..=2, 0usize..=2, 0usize..=2), Just(l)))
        .prop_filter("at most 4 letter pairs", |((a, b, c), _)| a + b + c <= 4)
        .prop_flat_map(|((a, b, c), l)| {
            let mut letters = Vec::new();
            for (g, k) in [a, b, c].into_iter().enumerate() {
                for _ in 0..k {
                    letters.push(2 * g as u8);
                    letters.push(2 * g as u8 + 1);
                }
            }
            (Just(letters).prop_shuffle(), prop::collection::vec(0usize..64, l - 1))
        })
        .prop_map(|(letters, cuts)| split(&letters, &cuts))
        .prop_filter("words of length at most 6", short_words)
}

pub fn any_tuple() -> impl Strategy<Value = WordTuple> {
    prop::collection::vec(prop::collection::vec(0u8..6, 0..=6), 1..=3).prop_map(|words| {
        WordTuple::new(words.into_iter().map(|w| FreeWord::from_letters(w.into_iter().map(letter).collect())))
    })
}

pub fn relabel(t: &WordTuple, perm: &[usize]) -> WordTuple {
    t.map_words(|w| w.substitute(|g| FreeWord::letter(Letter::pos(gen(perm[g.index()])))))
}

/// A matching tuple with levels `kappa[i] + 1` picked from `picks`.
pub fn matching_tuple(sp: &MatchingSpace, kappa: &[usize], picks: &[u64]) -> MatchingTuple {
    let mut it = picks.iter().cycle();
    let levels = sp
        .sizes()
        .iter()
        .zip(kappa)
        .map(|(&size, &k)| {
            (0..=k)
                .map(|_| {
                    let mut rank = *it.next().unwrap() % factorial(size);
                    let mut pool: Vec<usize> = (0..size).collect();
                    let mut images = Vec::with_capacity(size);
                    for left in (1..=size).rev() {
                        let f = factorial(left - 1);
                        images.push(pool.remove((rank / f) as usize));
                        rank %= f;
                    }
                    Permutation::from_images(images).unwrap()
                })
                .collect()
        })
        .collect();
    MatchingTuple::new(levels)
}

pub type Check = std::result::Result<(), TestCaseError>;

pub fn unbalanced_vanishes(t: &WordTuple) -> Check {
    prop_assert!(trace_rational(t).value.is_zero());
    prop_assert_eq!(chi_max(t), None);
    let s = trace_laurent(t, 2, DEFAULT_BUDGET).unwrap();
    prop_assert!(s.is_zero() && s.is_exact());
    Ok(())
}

pub fn parity(t: &WordTuple) -> Check {
    let v = trace_rational(t).value;
    let top = chi_max(t).unwrap();
    let parity = t.len() as i64 % 2;
    for (e, _) in v.laurent(top - 6).terms() {
        prop_assert_eq!(e.rem_euclid(2), parity, "exponent {} in {}", e, v);
    }
    Ok(())
}

pub fn degree_bound(t: &WordTuple) -> Check {
    if let Some(d) = trace_rational(t).value.degree() {
        prop_assert!(d <= chi_max(t).unwrap());
    }
    Ok(())
}

fn same_trace(t: &WordTuple, u: &WordTuple) -> Check {
    prop_assert_eq!(trace_rational(t).value, trace_rational(u).value, "{:?} vs {:?}", t, u);
    Ok(())
}

pub fn tuple_permutation(t: &WordTuple, k: usize) -> Check {
    if t.words().is_empty() {
        return Ok(());
    }
    let mut words = t.words().to_vec();
    let len = words.len();
    words.rotate_left(k % len);
    words.reverse();
    same_trace(t, &with_trivial(words, t))
}

pub fn cyclic_rotation(t: &WordTuple, i: usize, k: usize) -> Check {
    if t.words().is_empty() {
        return Ok(());
    }
    let i = i % t.words().len();
    let words: Vec<FreeWord> =
        t.words().iter().enumerate().map(|(j, w)| if j == i { w.rotate(k % w.len()) } else { w.clone() }).collect();
    same_trace(t, &with_trivial(words, t))
}

pub fn global_inversion(t: &WordTuple) -> Check {
    same_trace(t, &t.map_words(FreeWord::inverse))
}

pub fn nielsen_move(t: &WordTuple) -> Check {
    let (x, y) = (gen(0), gen(1));
    let image = |g: Generator| {
        if g == x {
            FreeWord::from_letters(vec![Letter::pos(x), Letter::pos(y)])
        } else {
            FreeWord::letter(Letter::pos(g))
        }
    };
    same_trace(t, &t.map_words(|w| w.substitute(image)))
}

pub fn relabeling(t: &WordTuple, perm: &[usize]) -> Check {
    same_trace(t, &relabel(t, perm))
}

pub fn chi_two_ways(t: &WordTuple, kappa: &[usize], picks: &[u64]) -> Check {
    let sp = MatchingSpace::new(t).unwrap();
    let s = matching_tuple(&sp, &kappa[..sp.sizes().len()], picks);
    let surface = sp.build_surface(&s).unwrap();
    prop_assert_eq!(surface.chi, sp.chi_closed_form(&s));
    prop_assert_eq!(surface.chi.rem_euclid(2), (t.nontrivial_part().len() as i64) % 2);
    Ok(())
}

pub fn z_discs_are_cycles(t: &WordTuple, kappa: &[usize], picks: &[u64]) -> Check {
    let sp = MatchingSpace::new(t).unwrap();
    let s = matching_tuple(&sp, &kappa[..sp.sizes().len()], picks);
    let surface = sp.build_surface(&s).unwrap();
    for (g, levels) in sp.generators().iter().zip(s.levels()) {
        for (j, pair) in levels.windows(2).enumerate() {
            let cycles = pair[0].inverse().compose(&pair[1]).num_cycles();
            prop_assert_eq!(surface.z_discs(g.name(), j), cycles);
        }
    }
    Ok(())
}

pub fn enumeration_matches_expansion(t: &WordTuple) -> Check {
    let s = trace_laurent(t, 2, DEFAULT_BUDGET).unwrap();
    prop_assert_eq!(&s, &trace_rational(t).value.laurent(s.floor()));
    Ok(())
}

/// `kappa` per generator and ranks for the matchings.
pub fn matching_choice() -> impl Strategy<Value = (Vec<usize>, Vec<u64>)> {
    (prop::collection::vec(0usize..=2, 3), prop::collection::vec(any::<u64>(), 1..12))
}

pub fn unbalanced() -> impl Strategy<Value = WordTuple> {
    any_tuple().prop_filter("unbalanced", |t| !t.is_balanced())
}

pub fn generator_permutation() -> impl Strategy<Value = Vec<usize>> {
    Just(vec![0usize, 1, 2, 3]).prop_shuffle()
}
