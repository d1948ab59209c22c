use emodrift::{count_changes, drift_score, lexicon_score, EmotionLabel, Lexicon};
use proptest::prelude::*;

fn naive_drift(labels: &[EmotionLabel]) -> f64 {
    if labels.len() < 2 {
        return 0.0;
    }
    let mut changes = 0u32;
    let mut i = 0;
    while i + 1 < labels.len() {
        if labels[i].as_str() != labels[i + 1].as_str() {
            changes += 1;
        }
        i += 1;
    }
    f64::from(changes) / (labels.len() - 1) as f64
}

fn all_sequences(max_len: usize) -> Vec<Vec<EmotionLabel>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for seq in &frontier {
            for l in EmotionLabel::ALL {
                let mut s: Vec<EmotionLabel> = seq.clone();
                s.push(l);
                next.push(s);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[test]
fn drift_matches_naive_oracle_exhaustively() {
    let seqs = all_sequences(5);
    assert_eq!(seqs.len(), 1 + 6 + 36 + 216 + 1296 + 7776);
    for seq in &seqs {
        let (score, single) = drift_score(seq);
        assert_eq!(score, naive_drift(seq), "{seq:?}");
        assert_eq!(single, seq.len() <= 1);
        assert!((0.0..=1.0).contains(&score));
    }
}

fn label() -> impl Strategy<Value = EmotionLabel> {
    (0usize..6).prop_map(|i| EmotionLabel::ALL[i])
}

fn permutation() -> impl Strategy<Value = Vec<usize>> {
    Just((0..6).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn drift_extremes(seq in prop::collection::vec(label(), 2..40)) {
        let (score, _) = drift_score(&seq);
        prop_assert_eq!(score == 0.0, seq.iter().all(|&l| l == seq[0]));
        prop_assert_eq!(score == 1.0, seq.windows(2).all(|w| w[0] != w[1]));
    }

    #[test]
    fn relabeling_invariance(seq in prop::collection::vec(label(), 0..40), perm in permutation()) {
        let relabeled: Vec<EmotionLabel> = seq.iter().map(|l| EmotionLabel::ALL[perm[l.ordinal()]]).collect();
        prop_assert_eq!(count_changes(&seq), count_changes(&relabeled));
        prop_assert_eq!(drift_score(&seq), drift_score(&relabeled));
    }

    #[test]
    fn concatenation_identity(a in prop::collection::vec(label(), 1..20), b in prop::collection::vec(label(), 1..20)) {
        let joined: Vec<EmotionLabel> = a.iter().chain(b.iter()).copied().collect();
        let seam = usize::from(a.last() != b.first());
        prop_assert_eq!(count_changes(&joined), count_changes(&a) + count_changes(&b) + seam);
    }

    #[test]
    fn lexicon_distributions_are_normalized(sentence in "[a-z ]{1,40}happy|sad[a-z ,.]{0,40}") {
        let d = lexicon_score(&Lexicon::seed(), &sentence).unwrap();
        prop_assert!((d.scores().iter().sum::<f64>() - 1.0).abs() < 1e-6);
        prop_assert!(d.scores().iter().all(|s| (0.0..=1.0).contains(s)));
    }

    #[test]
    fn lexicon_is_bag_of_words(words in prop::collection::vec(
        prop::sample::select(vec!["happy", "sad", "angry", "i", "am", "love", "scared", "wow", "today"]), 1..15
    ), seed in any::<u64>()) {
        let lex = Lexicon::seed();
        let forward = words.join(" ");
        let mut shuffled = words.clone();
        // deterministic rotation + reversal as the permutation
        let k = (seed as usize) % shuffled.len();
        shuffled.rotate_left(k);
        shuffled.reverse();
        prop_assert_eq!(lexicon_score(&lex, &forward), lexicon_score(&lex, &shuffled.join(" ")));
    }

    #[test]
    fn lexicon_scaling_invariance(sentence in "(happy|sad|furious|love|wow|calm|the| ){1,20}", factor in 0.01f64..100.0) {
        prop_assume!(!sentence.trim().is_empty());
        let lex = Lexicon::seed();
        let scaled = lex.scaled(factor).unwrap();
        let a = lexicon_score(&lex, &sentence).unwrap();
        let b = lexicon_score(&scaled, &sentence).unwrap();
        for (x, y) in a.scores().iter().zip(b.scores()) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }
}
