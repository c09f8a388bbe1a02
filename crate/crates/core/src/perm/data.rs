//! Text formats for generator data.
//!
//! Generator files carry a header `degree n` followed by one permutation per
//! line in 0-based disjoint-cycle notation. Subgroup files name their parent
//! file on the first line (`parent <name>`) and then list one generator word
//! per line over the parent's generators, written `a`..`z` with optional
//! integer exponents, e.g. `a b^-1 a^2`. Blank lines and `#` comments are
//! ignored in both formats.

use super::group::PermutationGroup;
use super::permutation::{PermError, Permutation};

/// Parsed contents of a generator file.
#[derive(Clone, Debug)]
pub struct GeneratorData {
    pub degree: usize,
    pub generators: Vec<Permutation>,
}

impl GeneratorData {
    /// Builds the group the file describes.
    pub fn into_group(self) -> Result<PermutationGroup, PermError> {
        PermutationGroup::new(self.degree, self.generators)
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// Parses a generator file.
pub fn parse_generator_file(text: &str) -> Result<GeneratorData, PermError> {
    let mut lines = content_lines(text);
    let header = lines
        .next()
        .ok_or_else(|| PermError::Parse("empty generator file".into()))?;
    let degree = header
        .strip_prefix("degree")
        .map(str::trim)
        .and_then(|s| s.parse::<usize>().ok())
        .ok_or_else(|| PermError::Parse(format!("bad header {header:?}")))?;
    let generators: Result<Vec<Permutation>, PermError> = lines
        .map(|line| Permutation::parse_cycles(degree, line))
        .collect();
    Ok(GeneratorData {
        degree,
        generators: generators?,
    })
}

/// Parses a subgroup word file into the parent file name and the list of
/// words, each a sequence of `(generator index, exponent)` factors.
pub fn parse_subgroup_words(text: &str) -> Result<(String, Vec<Vec<(usize, i64)>>), PermError> {
    let mut lines = content_lines(text);
    let header = lines
        .next()
        .ok_or_else(|| PermError::Parse("empty subgroup file".into()))?;
    let parent = header
        .strip_prefix("parent")
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .ok_or_else(|| PermError::Parse(format!("bad header {header:?}")))?
        .to_string();
    let mut words = Vec::new();
    for line in lines {
        let mut word = Vec::new();
        for token in line.split_whitespace() {
            word.push(parse_factor(token)?);
        }
        if !word.is_empty() {
            words.push(word);
        }
    }
    Ok((parent, words))
}

fn parse_factor(token: &str) -> Result<(usize, i64), PermError> {
    let mut chars = token.chars();
    let letter = chars
        .next()
        .filter(|c| c.is_ascii_lowercase())
        .ok_or_else(|| PermError::BadWord(format!("bad factor {token:?}")))?;
    let index = (letter as u8 - b'a') as usize;
    let rest = chars.as_str();
    let exponent = if rest.is_empty() {
        1
    } else {
        rest.strip_prefix('^')
            .and_then(|e| e.parse::<i64>().ok())
            .ok_or_else(|| PermError::BadWord(format!("bad exponent in {token:?}")))?
    };
    Ok((index, exponent))
}

/// Evaluates a word over the given generators (left-to-right product).
pub fn evaluate_word(
    gens: &[Permutation],
    word: &[(usize, i64)],
) -> Result<Permutation, PermError> {
    let degree = gens
        .first()
        .map(Permutation::degree)
        .ok_or_else(|| PermError::BadWord("no generators to index".into()))?;
    let mut acc = Permutation::identity(degree);
    for &(index, exponent) in word {
        let g = gens
            .get(index)
            .ok_or_else(|| PermError::BadWord(format!("generator index {index} out of range")))?;
        acc = acc.then(&g.pow(exponent));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_file_round_trip() {
        let text = "# sample\ndegree 5\n(0 1 2)(3 4)\n(0 1)\n";
        let data = parse_generator_file(text).unwrap();
        assert_eq!(data.degree, 5);
        assert_eq!(data.generators.len(), 2);
        assert_eq!(data.generators[0].to_cycle_string(), "(0 1 2)(3 4)");
        // Both generators preserve {{0,1,2},{3,4}}, so this is S3 x S2.
        let group = data.into_group().unwrap();
        assert_eq!(group.order(), 12);
    }

    #[test]
    fn word_file_and_evaluation() {
        let text = "parent m11.gens\na b a^-1\nb^2\n";
        let (parent, words) = parse_subgroup_words(text).unwrap();
        assert_eq!(parent, "m11.gens");
        assert_eq!(words, vec![vec![(0, 1), (1, 1), (0, -1)], vec![(1, 2)]]);
        let a = Permutation::parse_cycles(4, "(0 1 2 3)").unwrap();
        let b = Permutation::parse_cycles(4, "(0 1)").unwrap();
        let gens = [a.clone(), b.clone()];
        let val = evaluate_word(&gens, &words[0]).unwrap();
        assert_eq!(val, a.then(&b).then(&a.inverse()));
        assert!(evaluate_word(&gens, &[(5, 1)]).is_err());
    }

    #[test]
    fn rejects_malformed_inputs() {
        assert!(parse_generator_file("").is_err());
        assert!(parse_generator_file("degree x\n").is_err());
        assert!(parse_subgroup_words("no header\n").is_err());
        assert!(parse_factor("A").is_err());
        assert!(parse_factor("a^x").is_err());
    }
}
