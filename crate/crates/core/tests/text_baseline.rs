use std::collections::BTreeSet;

use qpm_core::text::{
    build_index, closest_match_classical, hamming_score, pad_to_power_of_two, recode_kgrams,
    OracleIndex, Pattern, Text,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_symbols(rng: &mut ChaCha8Rng, len: usize, alphabet: u32) -> Vec<u32> {
    (0..len).map(|_| rng.gen_range(0..alphabet)).collect()
}

/// Independent recount: explicit index loop over every window.
fn brute_force(text: &[u32], pattern: &[u32]) -> (usize, Vec<usize>) {
    let mut scores = Vec::new();
    let mut o = 0;
    while o + pattern.len() <= text.len() {
        let mut s = 0;
        for j in 0..pattern.len() {
            if text[o + j] == pattern[j] {
                s += 1;
            }
        }
        scores.push(s);
        o += 1;
    }
    let best = *scores.iter().max().unwrap();
    let offsets = scores
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == best)
        .map(|(o, _)| o)
        .collect();
    (best, offsets)
}

#[test]
fn baseline_equals_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=64);
        let m = rng.gen_range(1..=n.min(8));
        let sigma = rng.gen_range(1..=5);
        let t = random_symbols(&mut rng, n, sigma);
        let p = random_symbols(&mut rng, m, sigma);
        let text = Text::new(t.clone()).unwrap();
        let pattern = Pattern::new(p.clone()).unwrap();
        let result = closest_match_classical(&text, &pattern).unwrap();
        let (best, offsets) = brute_force(&t, &p);
        assert_eq!(result.best_score, best);
        assert_eq!(result.offsets, offsets);
        for &o in &result.offsets {
            assert_eq!(hamming_score(&text, &pattern, o).unwrap(), best);
        }
    }
}

#[test]
fn indicators_partition_positions() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let t = random_symbols(&mut rng, 64, 4);
    let text = Text::new(t.iter().map(|&s| s + b'a' as u32).collect()).unwrap();
    let index = build_index(&text).unwrap();
    for i in 0..64 {
        let set: usize = index
            .alphabet()
            .map(|s| index.f_sigma(s, i).unwrap() as usize)
            .sum();
        assert_eq!(set, 1, "position {i}");
        let here = text.get(i).unwrap();
        assert!(index.f_sigma(here, i).unwrap());
    }
}

#[test]
fn random_f_sigma_matches_text() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let t = random_symbols(&mut rng, 300, 7);
    let text = Text::new(t.clone()).unwrap();
    let index = build_index(&text).unwrap();
    for _ in 0..2000 {
        let i = rng.gen_range(0..300);
        let s = rng.gen_range(0..7);
        match index.f_sigma(s, i) {
            Ok(bit) => assert_eq!(bit, t[i] == s),
            Err(_) => assert!(!t.contains(&s)),
        }
    }
}

#[test]
fn padding_never_matches() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..50 {
        let n = rng.gen_range(4..80);
        let m = rng.gen_range(1..=n.min(6));
        let text = Text::new(random_symbols(&mut rng, n, 3)).unwrap();
        let padded = pad_to_power_of_two(&text, m).unwrap();
        let gap = padded.len() - m;
        assert!(gap.is_power_of_two() && gap >= 2);
        assert!(padded.len() - m < 2 * (n - m).max(2));
        let index = build_index(&padded).unwrap();
        for s in index.alphabet() {
            let ind = index.indicator(s).unwrap();
            assert!((n..padded.len()).all(|i| !ind.get(i)));
        }
    }
}

#[test]
fn kgram_recoding_preserves_planted_exact_matches() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for k in [2, 3] {
        for _ in 0..100 {
            let n = rng.gen_range(20..100);
            let m = rng.gen_range(k..8);
            let mut t = random_symbols(&mut rng, n, 4);
            let p = random_symbols(&mut rng, m, 4);
            let at = rng.gen_range(0..=n - m);
            t[at..at + m].copy_from_slice(&p);
            let text = Text::new(t.clone()).unwrap();
            let pattern = Pattern::new(p.clone()).unwrap();
            let exact = |text: &Text, pattern: &Pattern| -> BTreeSet<usize> {
                let r = closest_match_classical(text, pattern).unwrap();
                assert_eq!(r.best_score, pattern.len());
                r.offsets.into_iter().collect()
            };
            let (rt, rp) = recode_kgrams(&text, &pattern, k).unwrap();
            assert_eq!(rt.len(), n - k + 1);
            assert_eq!(rp.len(), m - k + 1);
            assert_eq!(exact(&text, &pattern), exact(&rt, &rp));
        }
    }
}

#[test]
fn large_index_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let bytes: Vec<u8> = (0..1 << 20).map(|_| rng.gen()).collect();
    let text = Text::from_bytes(&bytes).unwrap();
    let index = build_index(&text).unwrap();
    let json = index.to_json().unwrap();
    assert_eq!(OracleIndex::from_json(&json).unwrap(), index);
    assert_eq!(index.to_json().unwrap(), json);
}
