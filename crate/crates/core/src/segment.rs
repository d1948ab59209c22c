//! Rule-based sentence segmentation.
//!
//! A sentence ends at a maximal run of terminal punctuation (`.`, `!`, `?`)
//! that is followed by whitespace or the end of input. Whatever trails the
//! last terminal run becomes its own sentence. There is no abbreviation
//! handling, so `"Dr. Smith"` splits after `"Dr."`.
//!
//! Offsets are counted in Unicode scalar values (`char`s), not bytes.

use serde::Serialize;

/// One segmented sentence and its location in the source text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SentenceSpan {
    /// 0-based position of the sentence in the passage.
    pub index: usize,
    /// Sentence text with surrounding whitespace trimmed.
    pub text: String,
    /// Offset of the first char, in chars.
    pub start: usize,
    /// Exclusive end offset, in chars.
    pub end: usize,
}

fn is_terminal(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

/// Splits `text` into sentences. Empty or whitespace-only input yields no spans.
pub fn segment(text: &str) -> Vec<SentenceSpan> {
    let chars: Vec<char> = text.chars().collect();
    let n = chars.len();
    let mut spans = Vec::new();
    let mut seg_start = 0;
    let mut i = 0;

    while i < n {
        if !is_terminal(chars[i]) {
            i += 1;
            continue;
        }
        let mut run_end = i;
        while run_end < n && is_terminal(chars[run_end]) {
            run_end += 1;
        }
        if run_end == n || chars[run_end].is_whitespace() {
            push_trimmed(&chars, seg_start, run_end, &mut spans);
            seg_start = run_end;
        }
        i = run_end;
    }
    push_trimmed(&chars, seg_start, n, &mut spans);
    spans
}

fn push_trimmed(chars: &[char], mut start: usize, mut end: usize, spans: &mut Vec<SentenceSpan>) {
    while start < end && chars[start].is_whitespace() {
        start += 1;
    }
    while end > start && chars[end - 1].is_whitespace() {
        end -= 1;
    }
    if start == end {
        return;
    }
    spans.push(SentenceSpan {
        index: spans.len(),
        text: chars[start..end].iter().collect(),
        start,
        end,
    });
}

/// Collapses interior whitespace runs to a single space and trims both ends.
pub fn normalize_whitespace(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}
