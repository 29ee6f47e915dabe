//! PD corpora shipped with the crate.

pub const ROLFSEN_NONALTERNATING: &str = include_str!("../fixtures/rolfsen_nonalternating.pd");
pub const ALTERNATING_AND_LINKS: &str = include_str!("../fixtures/alternating_and_links.pd");
pub const BRAIDS: &str = include_str!("../fixtures/braids.pd");
pub const REIDEMEISTER_PAIRS: &str = include_str!("../fixtures/reidemeister_pairs.pd");

/// `(corpus name, text)` for every shipped corpus.
pub const ALL: [(&str, &str); 4] = [
    ("rolfsen_nonalternating", ROLFSEN_NONALTERNATING),
    ("alternating_and_links", ALTERNATING_AND_LINKS),
    ("braids", BRAIDS),
    ("reidemeister_pairs", REIDEMEISTER_PAIRS),
];
