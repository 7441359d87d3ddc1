use super::algebra::{abelian, product, sl2r, so_pq, su21, MatrixLieAlgebra};
use crate::error::{Error, Result};

/// Splits `s` at commas that are not nested inside brackets.
pub(crate) fn split_top_level(s: &str) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth: i32 = 0;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced brackets in '{s}'")));
                }
            }
            ',' if depth == 0 => {
                parts.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced brackets in '{s}'")));
    }
    parts.push(s[start..].trim());
    Ok(parts)
}

/// If `s` is `head(args)`, returns `args`.
pub(crate) fn call_args<'a>(s: &'a str, head: &str) -> Option<&'a str> {
    let rest = s.strip_prefix(head)?.trim_start();
    let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
    Some(inner)
}

pub(crate) fn parse_usize(s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("expected a non-negative integer, got '{s}'")))
}

/// Parses an algebra name such as `sl2R`, `so(3,2)`, `su(2,1)`, `abelian(2)`
/// or `prod(so(1,1),so(2,0))`.
pub fn parse_algebra(spec: &str) -> Result<MatrixLieAlgebra> {
    let s = spec.trim();
    match s {
        "sl2R" | "sl2r" | "sl(2,R)" | "sl(2,r)" => return Ok(sl2r()),
        "su(2,1)" | "su21" => return Ok(su21()),
        _ => {}
    }
    if let Some(args) = call_args(s, "so") {
        let a = split_top_level(args)?;
        return match a.as_slice() {
            [n] => so_pq(parse_usize(n)?, 0),
            [p, q] => so_pq(parse_usize(p)?, parse_usize(q)?),
            _ => Err(Error::Parse(format!("so expects one or two integers: '{s}'"))),
        };
    }
    if let Some(args) = call_args(s, "abelian") {
        return abelian(parse_usize(args)?);
    }
    if let Some(args) = call_args(s, "prod") {
        let factors = split_top_level(args)?
            .into_iter()
            .map(parse_algebra)
            .collect::<Result<Vec<_>>>()?;
        return product(&factors);
    }
    if s.starts_with("su(") {
        return Err(Error::UnsupportedAlgebra(format!(
            "{s}: only su(2,1) is supported"
        )));
    }
    Err(Error::UnsupportedAlgebra(s.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::AlgebraKind;

    #[test]
    fn parses_catalog_names() {
        assert_eq!(parse_algebra("sl2R").unwrap().dim(), 3);
        assert_eq!(parse_algebra("so(3,2)").unwrap().dim(), 10);
        assert_eq!(parse_algebra("su(2,1)").unwrap().dim(), 8);
        assert_eq!(parse_algebra("abelian(2)").unwrap().dim(), 2);
        let p = parse_algebra("prod(so(1,1),so(2,0))").unwrap();
        assert_eq!(p.dim(), 2);
        assert!(matches!(p.kind(), AlgebraKind::Product(v) if v.len() == 2));
    }

    #[test]
    fn nested_products() {
        let p = parse_algebra("prod(sl2R, prod(so(2), abelian(1)))").unwrap();
        assert_eq!(p.dim(), 5);
    }

    #[test]
    fn rejects_unknown() {
        assert!(matches!(parse_algebra("e8"), Err(Error::UnsupportedAlgebra(_))));
        assert!(matches!(parse_algebra("su(3,1)"), Err(Error::UnsupportedAlgebra(_))));
        assert!(matches!(
            parse_algebra("so(7,4)"),
            Err(Error::DimensionTooLarge { .. })
        ));
        assert!(parse_algebra("prod(sl2R").is_err());
    }

    #[test]
    fn splits_only_top_level() {
        let v = split_top_level("so(2,1), blocks[(1,1),(2,0)]").unwrap();
        assert_eq!(v, vec!["so(2,1)", "blocks[(1,1),(2,0)]"]);
    }
}
