//! Catalog checks run by `gradalg sweep`.

use serde_json::{json, Value};

use gradalg::algebra::GradedAlgebra;
use gradalg::catalog::{ABELIAN, NON_ABELIAN};
use gradalg::cohomology::{
    class_order, classes_equivalent, extend_class_using, h2_of_subgroup, h2_over_fstar, is_cocycle, restrict,
    ExpCocycle,
};
use gradalg::embeddings::matrix_embed;
use gradalg::graded_matrix::GradedMatrixAlgebra;
use gradalg::group::{build_group_with_cap, enumerate_subgroups, subgroup_relations, GroupSpec, Subgroup};
use gradalg::io::Workspace;
use gradalg::twisted::TwistedGroupAlgebra;
use gradalg::Result;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn cyclic_factors(name: &str) -> Vec<usize> {
    name.split('x').map(|c| c.trim_start_matches('C').parse().expect("catalog name")).collect()
}

fn check(name: &str, pass: bool, detail: Value) -> Value {
    json!({ "name": name, "pass": pass, "detail": detail })
}

pub fn run(ws: &Workspace) -> Result<Value> {
    let cap = ws.config.order_cap;
    let group = |s: &str| build_group_with_cap(&GroupSpec::parse(s)?, cap);
    let mut checks = Vec::new();

    let mut rows = Vec::new();
    let mut ok = true;
    for name in ABELIAN {
        let f = cyclic_factors(name);
        let expected: usize =
            (0..f.len()).flat_map(|i| (i + 1..f.len()).map(move |j| (i, j))).map(|(i, j)| gcd(f[i], f[j])).product();
        let got = h2_over_fstar(&group(name)?)?.order;
        ok &= got as usize == expected;
        rows.push(json!({ "group": name, "order": got, "expected": expected }));
    }
    checks.push(check("abelian_h2_orders", ok, json!(rows)));

    let mut rows = Vec::new();
    let mut ok = true;
    for (name, expected) in [("S3", 1u64), ("Q8", 1), ("D4", 2)] {
        let got = h2_over_fstar(&group(name)?)?.order;
        ok &= got == expected;
        rows.push(json!({ "group": name, "order": got, "expected": expected }));
    }
    checks.push(check("non_abelian_h2_orders", ok, json!(rows)));

    let mut ok = true;
    for name in ABELIAN.iter().chain(NON_ABELIAN) {
        let g = group(name)?;
        let n = g.order() as u128;
        let bound = n.checked_pow((g.order() * (g.order() - 1) / 2 + 1) as u32).unwrap_or(u128::MAX);
        ok &= (h2_over_fstar(&g)?.order as u128) <= bound;
    }
    checks.push(check("h2_counting_bound", ok, Value::Null));

    let v4 = group("C2xC2")?;
    let table = vec![vec![0, 0, 0, 0], vec![0, 0, 0, 0], vec![0, 1, 0, 1], vec![0, 1, 0, 1]];
    let sigma = ExpCocycle::new(v4.clone(), Subgroup::full(&v4), 2, table)?;
    let triv = ExpCocycle::trivial(v4.clone(), Subgroup::full(&v4), 2);
    let h = Subgroup::new(&v4, [0, 1])?;
    let res = restrict(&sigma, &h)?;
    let ok = is_cocycle(&sigma)
        && class_order(&sigma)? == 2
        && classes_equivalent(&sigma, &triv)?.is_none()
        && classes_equivalent(&res, &ExpCocycle::trivial(v4.clone(), h, 2))?.is_some();
    checks.push(check("klein_four_cocycle", ok, Value::Null));

    let mut rows = Vec::new();
    let mut ok = true;
    for name in ABELIAN.iter().chain(NON_ABELIAN) {
        let g = group(name)?;
        let whole = h2_of_subgroup(&g, &Subgroup::full(&g), cap)?;
        let (mut good, mut bad) = (0usize, 0usize);
        for c in enumerate_subgroups(&g) {
            if !subgroup_relations(&g, &c)?.is_central {
                continue;
            }
            for rep in h2_of_subgroup(&g, &c, cap)?.all_classes() {
                let extended = extend_class_using(&rep, &whole, ws.config.modulus)?;
                let round_trip = match extended {
                    Some(e) => classes_equivalent(&restrict(&e, &c)?, &rep)?.is_some(),
                    None => false,
                };
                if round_trip {
                    good += 1;
                } else {
                    bad += 1;
                }
            }
        }
        ok &= bad == 0;
        rows.push(json!({ "group": name, "extended": good, "failed": bad }));
    }
    checks.push(check("central_class_extension", ok, json!(rows)));

    let z2 = group("C2")?;
    let untwisted = |h: Subgroup| TwistedGroupAlgebra::untwisted(z2.clone(), h);
    let a = GradedMatrixAlgebra::new(untwisted(Subgroup::full(&z2))?, vec![0])?;
    let b = GradedMatrixAlgebra::new(untwisted(Subgroup::trivial(&z2))?, vec![0, 1])?;
    let c = GradedMatrixAlgebra::new(untwisted(Subgroup::full(&z2))?, vec![0, 0])?;
    let verdicts = [matrix_embed(&a, &b)?, matrix_embed(&b, &a)?, matrix_embed(&a, &c)?, matrix_embed(&b, &c)?]
        .map(|r| r.is_yes());
    checks.push(check("group_algebra_vs_matrices", verdicts == [false, false, true, true], json!(verdicts)));

    let z4 = group("C4")?;
    let m2 = GradedMatrixAlgebra::new(TwistedGroupAlgebra::untwisted(z4.clone(), Subgroup::trivial(&z4))?, vec![0, 1])?;
    let support = m2.support();
    let closed = support.iter().all(|&x| support.iter().all(|&y| support.contains(&z4.mul(x, y))));
    checks.push(check("cyclic_four_support", support == [0, 1, 3] && !closed, json!(support)));

    let all_pass = checks.iter().all(|c| c["pass"] == true);
    Ok(json!({ "checks": checks, "all_pass": all_pass }))
}
