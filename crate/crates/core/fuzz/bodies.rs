// Shared by the fuzz targets and the corpus replay test.

/// Parsing the portrait text form never panics, and accepted input
/// round-trips through `Display`.
pub fn portrait_text(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = text.parse::<sylow2::Portrait>() {
        let again: sylow2::Portrait = p.to_string().parse().expect("display output parses");
        assert_eq!(again, p);
    }
}

/// First byte picks the degree (1..=64); the rest is cycle notation.
pub fn cycle_notation(data: &[u8]) {
    let Some((&first, rest)) = data.split_first() else { return };
    let degree = usize::from(first % 64) + 1;
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(p) = sylow2::LeafPermutation::parse_cycles(text, degree) {
        let again = sylow2::LeafPermutation::parse_cycles(&p.to_string(), degree).expect("display output parses");
        assert_eq!(again, p);
    }
}

/// Cache files either fail validation or describe a closed group that
/// re-encodes to an equivalent file.
pub fn group_cache(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if data.len() > 1 << 16 {
        return;
    }
    if let Ok(g) = sylow2::cache::from_json(text, false) {
        let encoded = sylow2::cache::to_json(&g);
        let back = sylow2::cache::from_json(&encoded, false).expect("re-encoded cache loads");
        assert_eq!(back.elements(), g.elements());
    }
}
