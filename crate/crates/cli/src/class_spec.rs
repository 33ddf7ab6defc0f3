//! Parsing of `--class` arguments.
//!
//! Accepted forms, tried in order:
//!
//! * `w`, `v`: the two generators of the numerical Kuznetsov lattice;
//! * `O`, `O(n)`: line bundles;
//! * `ku:a,b`: the class `a·v + b·w`;
//! * a catalog name such as `I_p` or `O_Y(-1)`;
//! * `r,c1,c2[,c3]`: raw rationals in the basis `1, H, H², H³`.

use anyhow::{anyhow, bail, Result};
use kuwalls_core::catalog;
use kuwalls_core::rational::{parse_q, qi};
use kuwalls_core::{ChernVector, FanoContext, KuClass};

pub fn parse_class(ctx: &FanoContext, spec: &str) -> Result<ChernVector> {
    let s = spec.trim();
    match s {
        "w" => return Ok(ctx.w()),
        "v" => return Ok(ctx.v()),
        "O" => return Ok(ChernVector::unit()),
        _ => {}
    }
    if let Some(n) = s.strip_prefix("O(").and_then(|r| r.strip_suffix(')')) {
        let n: i128 = n.trim().parse().map_err(|_| anyhow!("bad twist in {s:?}"))?;
        return Ok(ChernVector::line_bundle(n));
    }
    if let Some(rest) = s.strip_prefix("ku:") {
        let parts: Vec<&str> = rest.split(',').collect();
        let [a, b] = parts.as_slice() else {
            bail!("expected ku:a,b, got {s:?}");
        };
        let a: i64 = a.trim().parse().map_err(|_| anyhow!("bad coefficient in {s:?}"))?;
        let b: i64 = b.trim().parse().map_err(|_| anyhow!("bad coefficient in {s:?}"))?;
        return Ok(KuClass::new(a, b).embed(ctx));
    }
    if let Some(e) = catalog::lookup(ctx.degree(), s)? {
        return Ok(e.chern);
    }
    if s.contains(',') {
        let coeffs = s.split(',').map(parse_q).collect::<Result<Vec<_>, _>>()?;
        return match coeffs.as_slice() {
            [r, c1, c2] => Ok(ChernVector::new(*r, *c1, *c2, qi(0))),
            [r, c1, c2, c3] => Ok(ChernVector::new(*r, *c1, *c2, *c3)),
            _ => bail!("expected 3 or 4 rationals, got {}", coeffs.len()),
        };
    }
    bail!("unknown class {s:?}: not w, v, O(n), ku:a,b, a catalog name, or r,c1,c2[,c3]")
}

#[cfg(test)]
mod tests {
    use super::*;
    use kuwalls_core::rational::q;

    #[test]
    fn forms() {
        let ctx = FanoContext::new(2).unwrap();
        assert_eq!(parse_class(&ctx, "w").unwrap(), ctx.w());
        assert_eq!(parse_class(&ctx, "ku:0,1").unwrap(), ctx.w());
        assert_eq!(parse_class(&ctx, "0,1,-1/2,-1/3").unwrap(), ctx.w());
        assert_eq!(parse_class(&ctx, "O(-1)").unwrap(), ChernVector::line_bundle(-1));
        assert_eq!(
            parse_class(&ctx, "1,0,-1/2").unwrap(),
            ChernVector::new(qi(1), qi(0), q(-1, 2), qi(0))
        );
        assert!(parse_class(&ctx, "I_p").is_ok());
        assert!(parse_class(&ctx, "banana").is_err());
        assert!(parse_class(&ctx, "1,2").is_err());
        assert!(parse_class(&ctx, "1,x,3").is_err());
    }
}
