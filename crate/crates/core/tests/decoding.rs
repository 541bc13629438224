use proptest::prelude::*;

use hadamard_pd::code_binary::build_binary_hadamard;
use hadamard_pd::decoder::{minimum_distance_decode, perm_decode, simulate_channel};
use hadamard_pd::pdset::double_pdset;
use hadamard_pd::pdset_binary::construct_explicit_binary;
use hadamard_pd::pdset_z4::construct_explicit_z4;
use hadamard_pd::{AnyCode, BitVector, PdSet, SystematicCode};

fn subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut all = vec![vec![]];
    let mut frontier = all.clone();
    for _ in 0..max {
        frontier = frontier
            .iter()
            .flat_map(|p: &Vec<usize>| (p.last().map_or(0, |&l| l + 1)..n).map(move |q| [p.as_slice(), &[q]].concat()))
            .collect();
        all.extend(frontier.iter().cloned());
    }
    all
}

fn flipped(x: &BitVector, positions: &[usize]) -> BitVector {
    let mut y = x.clone();
    for &p in positions {
        y.flip(p);
    }
    y
}

fn assert_complete(code: &dyn SystematicCode, pd: &PdSet, words: &[BitVector], weight: usize) {
    let patterns = subsets(code.length(), weight);
    for x in words {
        for p in &patterns {
            let r = perm_decode(code, pd, &flipped(x, p)).unwrap();
            assert_eq!(r.codeword.as_ref(), Some(x), "errors at {p:?}");
        }
    }
}

#[test]
fn h4_sound_on_every_received_word() {
    let code = build_binary_hadamard(4).unwrap();
    let pd = construct_explicit_binary(&code).unwrap().pdset;
    let words = code.codewords();
    let mut decoded = 0;
    for e in 0..1u64 << 16 {
        let y = BitVector::from_u64(e, 16);
        if let Some(c) = perm_decode(&code, &pd, &y).unwrap().codeword {
            assert!(code.contains(&c));
            assert_eq!(Some(c), minimum_distance_decode(&words, &y));
            decoded += 1;
        }
    }
    // every word within distance 2 is decoded, none beyond t = 3
    assert!(decoded >= 32 * 137);
    assert!(decoded <= 32 * (137 + 560));
}

#[test]
fn h5_complete_and_sound_up_to_weight_five() {
    let code = build_binary_hadamard(5).unwrap();
    let pd = construct_explicit_binary(&code).unwrap().pdset;
    assert_eq!(pd.s, 4);
    let words = code.codewords();
    let zero = BitVector::zeros(32);
    for p in subsets(32, 5) {
        let y = flipped(&zero, &p);
        let r = perm_decode(&code, &pd, &y).unwrap();
        if p.len() <= 4 {
            assert_eq!(r.codeword.as_ref(), Some(&zero), "{p:?}");
        }
        if let Some(c) = r.codeword {
            assert_eq!(Some(c), minimum_distance_decode(&words, &y));
        }
    }
    assert_complete(&code, &pd, &words[..4], 4);
}

#[test]
fn doubled_and_z4_codes_decode_up_to_s() {
    let h4 = AnyCode::Binary(build_binary_hadamard(4).unwrap());
    let p2 = construct_explicit_binary(h4.as_binary().unwrap()).unwrap().pdset;
    let (h5, d) = double_pdset(&h4, &p2).unwrap();
    let words = h5.codewords();
    assert_complete(&h5, &d, &words, 2);

    let ex = construct_explicit_z4(1, 3).unwrap();
    assert_eq!((ex.code.length(), ex.pdset.s), (64, 4));
    let words = ex.code.codewords();
    assert_complete(&ex.code, &ex.pdset, &words[..8], 3);
}

#[test]
fn simulation_matches_exhaustive_behaviour() {
    let ex = construct_explicit_z4(0, 3).unwrap();
    let stats = simulate_channel(&ex.code, &ex.pdset, &[0, 4, 16], 400, 5).unwrap();
    assert_eq!(stats.rows[0].rate, 1.0);
    assert_eq!(stats.rows[1].rate, 1.0);
    assert!(stats.rows[2].rate < 1.0);
    let again = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| simulate_channel(&ex.code, &ex.pdset, &[0, 4, 16], 400, 5).unwrap());
    assert_eq!(stats, again);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decoding_commutes_with_automorphisms(e in any::<u32>(), which in 0usize..3, k in 0usize..32) {
        let code = build_binary_hadamard(5).unwrap();
        let pd = construct_explicit_binary(&code).unwrap().pdset;
        let words = code.codewords();
        let y = words[k].xor(&BitVector::from_u64(e as u64, 32));
        let sigma = &pd.perms[which + 1];
        let a = perm_decode(&code, &pd, &y).unwrap().codeword;
        let b = perm_decode(&code, &pd, &sigma.act(&y)).unwrap().codeword;
        if let (Some(a), Some(b)) = (a, b) {
            prop_assert_eq!(sigma.act(&a), b);
        }
    }

    #[test]
    fn z4_decoding_is_nearest_codeword(e in any::<u32>(), k in 0usize..64) {
        let ex = construct_explicit_z4(0, 3).unwrap();
        let words = ex.code.codewords();
        let y = words[k].xor(&BitVector::from_u64(e as u64, 32));
        if let Some(c) = perm_decode(&ex.code, &ex.pdset, &y).unwrap().codeword {
            prop_assert!(c.distance(&y) <= 7);
            prop_assert_eq!(Some(c), minimum_distance_decode(&words, &y));
        }
    }
}
