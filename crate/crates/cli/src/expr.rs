//! The character-expression grammar of the `decompose` subcommand:
//!
//! ```text
//! expr := H | L2H | L3H | L4H | L20H | L30H | Q(<r>)
//!       | wedge<k>(expr) | adams<k>(expr) | tensor(expr, expr)
//!       | grp_<r>
//! ```
//!
//! `grp_<r>` is the degree-`r` graded piece of the quotient Lie algebra.

use torelli::character::{self, VirtualCharacter};
use torelli::freelie;
use torelli::SymplecticSpace;

pub fn parse(space: SymplecticSpace, input: &str) -> Result<VirtualCharacter, String> {
    let s = input.trim();
    let fail = |m: &str| format!("cannot parse '{s}': {m}");
    match s {
        "H" => return Ok(character::char_h(space)),
        "L20H" => return Ok(character::char_lambda2_0(space)),
        "L30H" => return Ok(character::char_lambda3_0(space)),
        "Vbox" => return Ok(character::char_vboxplus(space)),
        _ => {}
    }
    if let Some(k) = s.strip_prefix('L').and_then(|r| r.strip_suffix('H')) {
        let k: u32 = k.parse().map_err(|_| fail("bad wedge index"))?;
        return character::char_h(space)
            .wedge_power(k)
            .map_err(|e| fail(&e.to_string()));
    }
    if let Some(r) = s.strip_prefix("Q(").and_then(|r| r.strip_suffix(')')) {
        let r: i64 = r.trim().parse().map_err(|_| fail("bad twist"))?;
        return Ok(character::trivial(space.genus(), r));
    }
    if let Some(r) = s.strip_prefix("grp_") {
        let r: usize = r.parse().map_err(|_| fail("bad degree"))?;
        if r == 0 {
            return Err(fail("degree must be positive"));
        }
        return freelie::graded_p_character(space, r, None).map_err(|e| fail(&e.to_string()));
    }
    if let Some(rest) = s.strip_prefix("wedge") {
        let (k, inner) = split_call(rest).ok_or_else(|| fail("expected wedge<k>(...)"))?;
        let chi = parse(space, inner)?;
        return chi.wedge_power(k).map_err(|e| fail(&e.to_string()));
    }
    if let Some(rest) = s.strip_prefix("adams") {
        let (k, inner) = split_call(rest).ok_or_else(|| fail("expected adams<k>(...)"))?;
        let chi = parse(space, inner)?;
        return chi.adams(k).map_err(|e| fail(&e.to_string()));
    }
    if let Some(inner) = s.strip_prefix("tensor(").and_then(|r| r.strip_suffix(')')) {
        let comma = top_level_comma(inner).ok_or_else(|| fail("tensor needs two arguments"))?;
        let a = parse(space, &inner[..comma])?;
        let b = parse(space, &inner[comma + 1..])?;
        return a.tensor(&b).map_err(|e| fail(&e.to_string()));
    }
    Err(fail("unknown expression"))
}

fn split_call(rest: &str) -> Option<(u32, &str)> {
    let open = rest.find('(')?;
    let k: u32 = rest[..open].parse().ok()?;
    let inner = rest[open + 1..].strip_suffix(')')?;
    Some((k, inner))
}

fn top_level_comma(s: &str) -> Option<usize> {
    let mut depth = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(g: usize) -> SymplecticSpace {
        SymplecticSpace::new(g).unwrap()
    }

    #[test]
    fn atoms_and_calls() {
        assert_eq!(parse(sp(3), "H").unwrap().dim(), 6);
        assert_eq!(parse(sp(3), "L30H").unwrap().dim(), 14);
        assert_eq!(parse(sp(3), "wedge2(L30H)").unwrap().dim(), 91);
        assert_eq!(parse(sp(3), "L4H").unwrap().dim(), 15);
        assert_eq!(parse(sp(3), "tensor(H, L30H)").unwrap().dim(), 84);
        assert_eq!(parse(sp(3), "adams2(H)").unwrap().dim(), 6);
        assert_eq!(parse(sp(3), "Q(1)").unwrap().dim(), 1);
        assert_eq!(parse(sp(3), "grp_3").unwrap().dim(), 64);
        assert!(parse(sp(3), "nope").is_err());
        assert!(parse(sp(3), "grp_0").is_err());
    }
}
