//! Tokenization and sentence splitting shared by the offline impact matcher
//! and the linkography pipeline.

/// Lowercased maximal runs of ASCII-alphanumeric characters.
/// Non-ASCII characters act as separators.
pub fn tokens(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_ascii_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(|t| t.to_ascii_lowercase())
        .collect()
}

/// Whole-token, case-insensitive mention test. A multi-token symbol such as
/// `HLA-A` must appear as a contiguous token run.
pub fn mentions(haystack_tokens: &[String], symbol: &str) -> bool {
    let needle = tokens(symbol);
    if needle.is_empty() || needle.len() > haystack_tokens.len() {
        return false;
    }
    haystack_tokens.windows(needle.len()).any(|w| w == needle.as_slice())
}

/// Split into sentence-level segments. A segment ends at `.`, `!` or `?`
/// (kept with the segment) or at a newline (dropped). A `.` with digits on
/// both sides is a decimal point, not a terminator. Segments are trimmed;
/// those without any alphanumeric character are discarded.
pub fn sentences(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut current = String::new();
    let mut flush = |current: &mut String| {
        let trimmed = current.trim();
        if trimmed.chars().any(|c| c.is_ascii_alphanumeric()) {
            out.push(trimmed.to_string());
        }
        current.clear();
    };
    for (i, &c) in chars.iter().enumerate() {
        match c {
            '\n' | '\r' => flush(&mut current),
            '!' | '?' => {
                current.push(c);
                flush(&mut current);
            }
            '.' => {
                current.push(c);
                let decimal = i > 0
                    && chars[i - 1].is_ascii_digit()
                    && chars.get(i + 1).is_some_and(|n| n.is_ascii_digit());
                if !decimal {
                    flush(&mut current);
                }
            }
            _ => current.push(c),
        }
    }
    flush(&mut current);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokenization() {
        assert_eq!(tokens("Dock CDK5, now!"), ["dock", "cdk5", "now"]);
        assert!(tokens("...").is_empty());
    }

    #[test]
    fn mention_is_whole_token() {
        let t = tokens("CDK50 binds; hla-a is fine");
        assert!(!mentions(&t, "CDK5"));
        assert!(mentions(&t, "cdk50"));
        assert!(mentions(&t, "HLA-A"));
        assert!(!mentions(&t, ""));
    }

    #[test]
    fn sentence_split() {
        assert_eq!(sentences("I see CDK5. It docks well."), ["I see CDK5.", "It docks well."]);
        assert_eq!(sentences("one\ntwo\nthree"), ["one", "two", "three"]);
        assert_eq!(sentences("affinity -0.3 is good! ok?  ... \n\n"), ["affinity -0.3 is good!", "ok?"]);
    }
}
