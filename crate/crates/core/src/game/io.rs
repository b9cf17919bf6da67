//! Line-oriented text formats for instances and playing sequences.
//!
//! ```text
//! uno 1
//! players 2
//! colors 3
//! numbers 3
//! hand 1: 1,1 2,2
//! hand 2: 1,2
//! ```
//!
//! `#` starts a comment and blank lines are ignored. A sequence file holds one
//! `<player> <color>,<number>` move per line.

use std::fmt::Write as _;

use thiserror::Error;

use super::model::{Card, Instance, PlayingSequence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}

/// Non-empty, comment-stripped lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn keyed_value(line: usize, text: &str, key: &str) -> Result<u32, ParseError> {
    let mut parts = text.split_whitespace();
    if parts.next() != Some(key) {
        return Err(ParseError::new(line, format!("expected `{key} <value>`")));
    }
    let value = parts
        .next()
        .ok_or_else(|| ParseError::new(line, format!("missing value for `{key}`")))?;
    if parts.next().is_some() {
        return Err(ParseError::new(line, format!("trailing text after `{key}`")));
    }
    value
        .parse()
        .map_err(|_| ParseError::new(line, format!("invalid {key} `{value}`")))
}

fn parse_card(line: usize, token: &str) -> Result<Card, ParseError> {
    let (x, y) = token
        .split_once(',')
        .ok_or_else(|| ParseError::new(line, format!("malformed card `{token}`, expected `color,number`")))?;
    let color = x.trim().parse().map_err(|_| ParseError::new(line, format!("malformed color in `{token}`")))?;
    let number = y.trim().parse().map_err(|_| ParseError::new(line, format!("malformed number in `{token}`")))?;
    Ok(Card::new(color, number))
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut lines = content_lines(text);
    let mut next = |what: &str| lines.next().ok_or_else(|| ParseError::new(0, format!("unexpected end of input, expected {what}")));

    let (ln, magic) = next("`uno 1` header")?;
    if magic.split_whitespace().collect::<Vec<_>>() != ["uno", "1"] {
        return Err(ParseError::new(ln, "malformed header, expected `uno 1`"));
    }
    let (ln, text) = next("`players`")?;
    let players = keyed_value(ln, text, "players")? as usize;
    if players == 0 {
        return Err(ParseError::new(ln, "players must be at least 1"));
    }
    let (ln, text) = next("`colors`")?;
    let colors = keyed_value(ln, text, "colors")?;
    if colors == 0 {
        return Err(ParseError::new(ln, "colors must be at least 1"));
    }
    let (ln, text) = next("`numbers`")?;
    let numbers = keyed_value(ln, text, "numbers")?;
    if numbers == 0 {
        return Err(ParseError::new(ln, "numbers must be at least 1"));
    }

    let mut hands = Vec::with_capacity(players);
    for expected in 1..=players {
        let (ln, text) = next(&format!("`hand {expected}:`"))?;
        let (head, body) = text
            .split_once(':')
            .ok_or_else(|| ParseError::new(ln, format!("expected `hand {expected}: ...`")))?;
        let mut head_parts = head.split_whitespace();
        let index = match (head_parts.next(), head_parts.next(), head_parts.next()) {
            (Some("hand"), Some(i), None) => i.parse::<usize>().ok(),
            _ => None,
        };
        if index != Some(expected) {
            return Err(ParseError::new(ln, format!("expected `hand {expected}:`, found `{head}:`")));
        }
        let mut hand = Vec::new();
        for token in body.split_whitespace() {
            let card = parse_card(ln, token)?;
            if card.color == 0 || card.color > colors {
                return Err(ParseError::new(ln, format!("color out of range in {card} (colors {colors})")));
            }
            if card.number == 0 || card.number > numbers {
                return Err(ParseError::new(ln, format!("number out of range in {card} (numbers {numbers})")));
            }
            hand.push(card);
        }
        hands.push(hand);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(ParseError::new(ln, format!("wrong hand count: more than {players} hand lines")));
    }
    Instance::new(colors, numbers, hands).map_err(|e| ParseError::new(0, e.to_string()))
}

pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "uno 1");
    let _ = writeln!(out, "players {}", inst.players());
    let _ = writeln!(out, "colors {}", inst.colors());
    let _ = writeln!(out, "numbers {}", inst.numbers());
    for (i, hand) in inst.hands().iter().enumerate() {
        let _ = write!(out, "hand {}:", i + 1);
        for card in hand {
            let _ = write!(out, " {card}");
        }
        out.push('\n');
    }
    out
}

/// Parses `(player, card)` pairs; occurrence resolution happens against an instance.
pub fn parse_plays(text: &str) -> Result<Vec<(usize, Card)>, ParseError> {
    content_lines(text)
        .map(|(ln, line)| {
            let mut parts = line.split_whitespace();
            let (player, card) = match (parts.next(), parts.next(), parts.next()) {
                (Some(p), Some(c), None) => (p, c),
                _ => return Err(ParseError::new(ln, "expected `<player> <color>,<number>`")),
            };
            let player = player
                .parse()
                .map_err(|_| ParseError::new(ln, format!("invalid player `{player}`")))?;
            Ok((player, parse_card(ln, card)?))
        })
        .collect()
}

pub fn serialize_sequence(seq: &PlayingSequence) -> String {
    seq.moves.iter().map(|m| format!("{m}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::example1;
    use crate::game::model::cards;

    #[test]
    fn parses_the_documented_example() {
        let inst = parse_instance("uno 1\nplayers 1\ncolors 4\nnumbers 4\nhand 1: 1,3 2,2\n").unwrap();
        assert_eq!(inst.players(), 1);
        assert_eq!((inst.colors(), inst.numbers()), (4, 4));
        assert_eq!(inst.hand(1), cards(&[(1, 3), (2, 2)]).as_slice());
    }

    #[test]
    fn comments_blank_lines_and_empty_hands() {
        let text = "# two players\nuno 1\n\nplayers 2 # p\ncolors 1\nnumbers 1\nhand 1: 1,1\nhand 2:\n";
        let inst = parse_instance(text).unwrap();
        assert!(inst.hand(2).is_empty());
        assert_eq!(serialize_instance(&inst), "uno 1\nplayers 2\ncolors 1\nnumbers 1\nhand 1: 1,1\nhand 2:\n");
    }

    #[test]
    fn example1_round_trip_is_byte_identical() {
        let (inst, _) = example1();
        let text = serialize_instance(&inst);
        assert_eq!(serialize_instance(&parse_instance(&text).unwrap()), text);
        assert_eq!(parse_instance(&text).unwrap(), inst);
    }

    #[test]
    fn errors_name_the_line() {
        let err = parse_instance("uno 1\nplayers 1\ncolors 4\nnumbers 4\nhand 1: 5,1\n").unwrap_err();
        assert_eq!(err.line, 5);
        assert!(err.message.contains("color out of range"), "{err}");

        let err = parse_instance("uno 2\n").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.message.contains("header"));

        let err = parse_instance("uno 1\nplayers 2\ncolors 2\nnumbers 2\nhand 1: 1,1\n").unwrap_err();
        assert!(err.message.contains("hand 2"), "{err}");

        let err = parse_instance("uno 1\nplayers 1\ncolors 2\nnumbers 2\nhand 1: 1,1\nhand 2: 1,1\n").unwrap_err();
        assert_eq!(err.line, 6);
        assert!(err.message.contains("wrong hand count"));

        let err = parse_instance("uno 1\nplayers 1\ncolors 2\nnumbers 2\nhand 1: 1;1\n").unwrap_err();
        assert!(err.message.contains("malformed card"));
    }

    #[test]
    fn sequence_format() {
        let plays = parse_plays("1 1,3\n# c\n2 2,3\n").unwrap();
        assert_eq!(plays, vec![(1, Card::new(1, 3)), (2, Card::new(2, 3))]);
        assert_eq!(parse_plays("1 1,3 extra").unwrap_err().line, 1);
        let (inst, seq) = example1();
        let text = serialize_sequence(&seq);
        assert_eq!(PlayingSequence::resolve(&inst, &parse_plays(&text).unwrap()).unwrap(), seq);
    }
}
