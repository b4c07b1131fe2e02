use super::SearchError;
use crate::formula::{parse_formula, Formula};

/// Scheme names in catalog order. Schematic letters are the variables `x`, `y`, `z`.
pub const SCHEME_NAMES: [&str; 12] = [
    "K_box", "Z_box", "K_dia", "Z_dia", "F_dia", "FS1", "FS2", "Cr", "UW_box", "UW_dia", "W_box", "W_dia",
];

fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "K_box" => "[](x -> y) -> ([]x -> []y)",
        "Z_box" => "~~[]x -> []~~x",
        "K_dia" => "<>(x | y) -> (<>x | <>y)",
        "Z_dia" => "<>~~x -> ~~<>x",
        "F_dia" => "~<>0",
        "FS1" => "<>(x -> y) -> ([]x -> <>y)",
        "FS2" => "(<>x -> []y) -> [](x -> y)",
        "Cr" => "[](x | y) -> ([]x | <>y)",
        "UW_box" => "[]~~x -> ~~[]x",
        "UW_dia" => "(<>x -> <>y) -> (~<>y | <>(x -> y))",
        "W_box" => "[](((x -> y) -> y) & (y -> x)) -> (([]x -> []y) -> []y)",
        "W_dia" => "((<>x -> <>y) & ((<>y -> <>z) -> <>z)) -> (<>z | <>((x -> y) & ((y -> z) -> z)))",
        _ => return None,
    })
}

fn canonical(name: &str) -> String {
    name.replace('□', "box")
        .replace('◇', "dia")
        .replace("FS_", "FS")
}

/// Looks up a scheme by name; `K_□`, `W_◇`, `FS_1` and similar spellings are
/// accepted as well.
pub fn scheme(name: &str) -> Result<Formula, SearchError> {
    let text = source(&canonical(name)).ok_or_else(|| SearchError::UnknownScheme(name.to_string()))?;
    Ok(parse_formula(text).expect("catalog formulas parse"))
}

pub fn scheme_catalog() -> Vec<(&'static str, Formula)> {
    SCHEME_NAMES
        .iter()
        .map(|&n| (n, scheme(n).expect("listed scheme")))
        .collect()
}
