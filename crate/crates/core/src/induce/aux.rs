/// Per-token annotation from the column file. Columns written as `_` are
/// absent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuxToken {
    pub form: String,
    pub lemma: Option<String>,
    pub pos: Option<String>,
    /// Document-wide index of the syntactic head; `Some(0)` marks the root.
    pub head: Option<usize>,
    pub deprel: Option<String>,
}

/// A coreference mention: inclusive token span in one chain.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mention {
    pub chain: String,
    pub start: usize,
    pub end: usize,
    pub entity: Option<String>,
}

impl Mention {
    pub fn tokens(&self) -> impl Iterator<Item = usize> {
        self.start..=self.end
    }

    pub fn within(&self, span: (usize, usize)) -> bool {
        span.0 <= self.start && self.end <= span.1
    }
}

/// A tokenless layout region (heading, caption, list item) as a token span.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LayoutRegion {
    pub kind: String,
    pub start: usize,
    pub end: usize,
}

/// Auxiliary annotation layers for one document.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuxAnnotations {
    /// Token `i` (1-based) is `tokens[i - 1]`.
    pub tokens: Vec<AuxToken>,
    /// Inclusive token ranges.
    pub sentences: Vec<(usize, usize)>,
    pub mentions: Vec<Mention>,
    pub layout: Vec<LayoutRegion>,
}

/// Rule families, used to report what was skipped for missing layers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Layer {
    Sentences,
    Lemma,
    Pos,
    Dependencies,
    Coreference,
}

impl Layer {
    pub fn as_str(self) -> &'static str {
        match self {
            Layer::Sentences => "sentences",
            Layer::Lemma => "lemma",
            Layer::Pos => "pos",
            Layer::Dependencies => "dependencies",
            Layer::Coreference => "coreference",
        }
    }
}

impl AuxAnnotations {
    /// Forms only, with no annotation layers.
    pub fn from_forms<'a>(forms: impl IntoIterator<Item = &'a str>) -> Self {
        AuxAnnotations {
            tokens: forms
                .into_iter()
                .map(|f| AuxToken {
                    form: f.to_string(),
                    ..AuxToken::default()
                })
                .collect(),
            ..AuxAnnotations::default()
        }
    }

    pub fn token(&self, index: usize) -> Option<&AuxToken> {
        index.checked_sub(1).and_then(|i| self.tokens.get(i))
    }

    pub fn has(&self, layer: Layer) -> bool {
        match layer {
            Layer::Sentences => !self.sentences.is_empty(),
            Layer::Lemma => self.tokens.iter().any(|t| t.lemma.is_some()),
            Layer::Pos => self.tokens.iter().any(|t| t.pos.is_some()),
            Layer::Dependencies => self
                .tokens
                .iter()
                .any(|t| t.head.is_some() && t.deprel.is_some()),
            Layer::Coreference => !self.mentions.is_empty(),
        }
    }

    pub fn lemma(&self, index: usize) -> Option<String> {
        let t = self.token(index)?;
        Some(t.lemma.clone().unwrap_or_else(|| t.form.to_lowercase()))
    }

    pub fn pos(&self, index: usize) -> Option<&str> {
        self.token(index)?.pos.as_deref()
    }

    pub fn deprel(&self, index: usize) -> Option<&str> {
        self.token(index)?.deprel.as_deref()
    }

    pub fn head(&self, index: usize) -> Option<usize> {
        self.token(index)?.head.filter(|h| *h > 0)
    }

    /// Dependents of `index` in text order.
    pub fn dependents(&self, index: usize) -> Vec<usize> {
        (1..=self.tokens.len())
            .filter(|&i| self.tokens[i - 1].head == Some(index))
            .collect()
    }

    /// Base relation of a dependency label ("acl:relcl" -> "acl").
    pub fn base_deprel(&self, index: usize) -> Option<&str> {
        self.deprel(index).map(|d| d.split(':').next().unwrap_or(d))
    }

    pub fn sentence_of(&self, index: usize) -> Option<(usize, usize)> {
        self.sentences
            .iter()
            .copied()
            .find(|(a, b)| *a <= index && index <= *b)
    }

    /// Checks that every sentence's dependency structure is a tree: heads
    /// inside the sentence or 0, exactly one root, no cycles. Returns the
    /// 1-based number of the first offending sentence and a message.
    pub fn check_dependency_trees(&self) -> Result<(), (usize, String)> {
        for (s, &(a, b)) in self.sentences.iter().enumerate() {
            let mut roots = 0;
            for i in a..=b {
                match self.tokens.get(i - 1).and_then(|t| t.head) {
                    None => {}
                    Some(0) => roots += 1,
                    Some(h) if h < a || h > b => {
                        return Err((
                            s + 1,
                            format!("token {i} has head {h} outside the sentence"),
                        ));
                    }
                    Some(h) if h == i => {
                        return Err((s + 1, format!("token {i} is its own head")));
                    }
                    Some(_) => {}
                }
            }
            let has_heads =
                (a..=b).any(|i| self.tokens.get(i - 1).is_some_and(|t| t.head.is_some()));
            if !has_heads {
                continue;
            }
            if roots != 1 {
                return Err((s + 1, format!("sentence has {roots} roots")));
            }
            for i in a..=b {
                let mut cur = i;
                let mut steps = 0;
                while let Some(h) = self
                    .tokens
                    .get(cur - 1)
                    .and_then(|t| t.head)
                    .filter(|h| *h > 0)
                {
                    cur = h;
                    steps += 1;
                    if steps > b - a + 1 {
                        return Err((s + 1, format!("dependency cycle through token {i}")));
                    }
                }
            }
        }
        Ok(())
    }
}
