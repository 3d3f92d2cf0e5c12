//! Textual names for catalog specs, the inverse of their `Display` form.

use polysep::CatalogSpec;

use crate::error::{CliError, Result};

/// Parses `simplex-3`, `cube-4`, `cross-3`, `cyclic-4-7`, `sphere-3-8-s7`,
/// `pyramid(..)`, `bipyramid(..)`, `prism(..)`, and the polygon names
/// `triangle`, `square`, `pentagon`.
pub fn parse_spec(text: &str) -> Result<CatalogSpec> {
    let bad = || CliError::BadSpec(text.to_string());
    let s = text.trim();
    for (prefix, wrap) in [
        ("pyramid(", wrap_pyramid as fn(CatalogSpec) -> CatalogSpec),
        ("bipyramid(", wrap_bipyramid),
        ("prism(", wrap_prism),
    ] {
        if let Some(inner) = s.strip_prefix(prefix).and_then(|r| r.strip_suffix(')')) {
            return Ok(wrap(parse_spec(inner).map_err(|_| bad())?));
        }
    }
    match s {
        "triangle" => return Ok(CatalogSpec::Simplex { d: 2 }),
        "square" => return Ok(CatalogSpec::Cube { d: 2 }),
        "pentagon" => return Ok(CatalogSpec::Cyclic { d: 2, n: 5 }),
        _ => {}
    }
    let mut parts = s.split('-');
    let family = parts.next().ok_or_else(bad)?;
    let args: Vec<&str> = parts.collect();
    let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
    match (family, args.as_slice()) {
        ("simplex", [d]) => Ok(CatalogSpec::Simplex { d: num(d)? }),
        ("cube", [d]) => Ok(CatalogSpec::Cube { d: num(d)? }),
        ("cross", [d]) => Ok(CatalogSpec::CrossPolytope { d: num(d)? }),
        ("cyclic", [d, n]) => Ok(CatalogSpec::Cyclic {
            d: num(d)?,
            n: num(n)?,
        }),
        ("sphere", [d, n, seed]) => Ok(CatalogSpec::RandomSphere {
            d: num(d)?,
            n: num(n)?,
            seed: seed
                .strip_prefix('s')
                .and_then(|t| t.parse().ok())
                .ok_or_else(bad)?,
        }),
        _ => Err(bad()),
    }
}

fn wrap_pyramid(base: CatalogSpec) -> CatalogSpec {
    CatalogSpec::Pyramid {
        base: Box::new(base),
    }
}

fn wrap_bipyramid(base: CatalogSpec) -> CatalogSpec {
    CatalogSpec::Bipyramid {
        base: Box::new(base),
    }
}

fn wrap_prism(base: CatalogSpec) -> CatalogSpec {
    CatalogSpec::Prism {
        base: Box::new(base),
    }
}
