use super::{Classifier, ClassifyError};
use crate::emotion::EmotionDistribution;
use crate::lexicon::{lexicon_score, Lexicon};

/// Deterministic offline backend scoring sentences against a [`Lexicon`].
#[derive(Debug, Clone)]
pub struct LexiconClassifier {
    lexicon: Lexicon,
}

impl LexiconClassifier {
    pub fn new(lexicon: Lexicon) -> Self {
        Self { lexicon }
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }
}

impl Default for LexiconClassifier {
    fn default() -> Self {
        Self::new(Lexicon::seed())
    }
}

impl Classifier for LexiconClassifier {
    fn kind(&self) -> &'static str {
        "lexicon"
    }

    fn classify(&self, sentence: &str) -> Result<EmotionDistribution, ClassifyError> {
        lexicon_score(&self.lexicon, sentence).ok_or(ClassifyError::EmptyInput)
    }
}
