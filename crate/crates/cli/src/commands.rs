use std::sync::Arc;

use serde_json::{json, Map, Value};

use compactify::brothers::{lambda_bar, little_brother_report};
use compactify::cartan::{parse_weight_list, CartanType, SimpleRootSet};
use compactify::classify::{
    classify_pi, colored_cone, local_factoriality, normality, q_factoriality, smoothness,
    timashev_check, Certificate, Verdict,
};
use compactify::oracle::{
    contains_in_tensor_with, omega_membership, prv_weight, tensor_decompose_with,
    verify_normality_bruteforce_with, weight_multiplicities_with, weyl_dimension,
};
use compactify::orders::{compare, maximal_elements, OrderKind};
use compactify::weights::{
    cone_lambda_contains, dominant_conjugate, pi_g_plus, pi_plus, weyl_orbit_capped, WeightSet,
    WeylWord,
};
use compactify::{parse_group, parse_weight, CharacterLattice, Error, RootSystem, Weight};

use crate::config::Settings;
use crate::{CliError, Command, LatticeChoice, OracleCommand, OrderArg, QuestionArg};

fn arg_err(argument: &str) -> impl FnOnce(Error) -> CliError + '_ {
    move |source| CliError::Argument {
        argument: argument.to_string(),
        source,
    }
}

fn group(arg: &str, s: &Settings) -> Result<CharacterLattice, CliError> {
    Ok(parse_group(arg).map_err(arg_err("group"))?.with_limits(s.limits()))
}

fn weight(name: &str, arg: &str, rs: &RootSystem) -> Result<Weight, CliError> {
    let w = parse_weight(arg).map_err(arg_err(name))?;
    rs.check_rank(&w).map_err(arg_err(name))?;
    Ok(w)
}

fn weights(name: &str, arg: &str, rs: &RootSystem) -> Result<Vec<Weight>, CliError> {
    let ws = parse_weight_list(arg).map_err(arg_err(name))?;
    for w in &ws {
        rs.check_rank(w).map_err(arg_err(name))?;
    }
    Ok(ws)
}

/// Comma-separated 1-based simple-root indices; the empty word is `""`.
fn word(name: &str, arg: &str, rank: usize) -> Result<WeylWord, CliError> {
    let mut out = Vec::new();
    if arg.trim().is_empty() {
        return Ok(WeylWord(out));
    }
    let mut pos = 0;
    for part in arg.split(',') {
        let lead = part.len() - part.trim_start().len();
        let i: usize = part.trim().parse().map_err(|_| {
            arg_err(name)(Error::Parse {
                position: pos + lead,
                message: format!("expected a simple-root index, found `{}`", part.trim()),
            })
        })?;
        if i == 0 || i > rank {
            return Err(arg_err(name)(Error::Parse {
                position: pos + lead,
                message: format!("simple-root index {i} is outside 1..={rank}"),
            }));
        }
        out.push(i - 1);
        pos += part.len() + 1;
    }
    Ok(WeylWord(out))
}

fn big(x: u128) -> Value {
    u64::try_from(x).map(Value::from).unwrap_or_else(|_| Value::String(x.to_string()))
}

fn object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("value".into(), other);
            m
        }
    }
}

pub fn execute(cmd: &Command, s: &Settings) -> Result<Value, CliError> {
    match cmd {
        Command::Info { group: g } => info(&group(g, s)?),
        Command::Compare { group: g, nu, mu, lambda } => {
            let lat = group(g, s)?;
            let rs = lat.root_system();
            let nu = weight("nu", nu, rs)?;
            let mu = weight("mu", mu, rs)?;
            let lambda = lambda.as_deref().map(|l| weight("lambda", l, rs)).transpose()?;
            compare_all(&lat, &nu, &mu, lambda.as_ref())
        }
        Command::Maximal { group: g, set, order, lambda } => {
            let lat = group(g, s)?;
            let rs = lat.root_system();
            let set = weights("set", set, rs)?;
            let lambda = lambda.as_deref().map(|l| weight("lambda", l, rs)).transpose()?;
            let order = order_kind(*order, lambda)?;
            let max = maximal_elements(rs, &set, &order)?;
            Ok(json!({
                "group": lat.describe(),
                "order": order,
                "set": WeightSet::from_vec(set),
                "maximal": max,
            }))
        }
        Command::PiPlus { group: g, lambda } => {
            let lat = group(g, s)?;
            let lambda = weight("lambda", lambda, lat.root_system())?;
            let set = pi_plus(&lat, &lambda)?;
            Ok(json!({
                "group": lat.describe(),
                "lambda": lambda,
                "size": set.len(),
                "pi_plus": set,
            }))
        }
        Command::PiGPlus { group: g, lambda } => {
            let lat = group(g, s)?;
            let lambda = weight("lambda", lambda, lat.root_system())?;
            let set = pi_g_plus(&lat, &lambda)?;
            Ok(json!({
                "group": lat.describe(),
                "lambda": lambda,
                "size": set.len(),
                "pi_g_plus": set,
            }))
        }
        Command::Orbit { group: g, weight: w } => {
            let lat = group(g, s)?;
            let rs = lat.root_system();
            let mu = weight("weight", w, rs)?;
            let (dominant, word) = dominant_conjugate(rs, &mu);
            let orbit = weyl_orbit_capped(rs, &mu, lat.limits())?;
            Ok(json!({
                "group": lat.describe(),
                "weight": mu,
                "dominant": dominant,
                "word": word,
                "size": orbit.len(),
                "orbit": orbit,
            }))
        }
        Command::LittleBrothers { group: g, lambda } => {
            let lat = group(g, s)?;
            let lambda = weight("lambda", lambda, lat.root_system())?;
            let mut out = object(json!(little_brother_report(&lat, &lambda)?));
            out.insert("group".into(), json!(lat.describe()));
            out.insert("lambda_bar".into(), json!(lambda_bar(lat.root_system(), &lambda)));
            Ok(Value::Object(out))
        }
        Command::Classify { group: g, pi, question } => {
            let lat = group(g, s)?;
            let pi = WeightSet::from_vec(weights("pi", pi, lat.root_system())?);
            classify(&lat, &pi, *question)
        }
        Command::Sweep { max_rank, lattices } => sweep(*max_rank, *lattices, s),
        Command::Oracle(o) => oracle(o, s),
    }
}

fn info(lat: &CharacterLattice) -> Result<Value, CliError> {
    let rs = lat.root_system();
    let components: Vec<Value> = rs
        .components()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            json!({
                "type": c.kind,
                "rank": c.rank,
                "simple_roots": c.indices().map(|i| i + 1).collect::<Vec<_>>(),
                "positive_roots": c.kind.positive_root_count(c.rank),
                "weyl_group_order": big(c.kind.weyl_group_order(c.rank)),
                "highest_short_root": rs.highest_short_root(c.offset),
                "lattice_order": lat.component_order(k),
            })
        })
        .collect();
    Ok(json!({
        "group": lat.describe(),
        "rank": rs.rank(),
        "components": components,
        "cartan_matrix": rs.cartan(),
        "det": rs.det(),
        "adjugate": rs.adjugate(),
        "simple_root_lengths": (0..rs.rank()).map(|i| rs.simple_length(i)).collect::<Vec<_>>(),
        "positive_roots": rs.positive_roots().len(),
        "weyl_group_order": big(rs.weyl_group_order()),
        "rho": rs.rho(),
        "lattice": {
            "name": lat.name(),
            "order": lat.order(),
            "exponent": lat.exponent(),
            "generators": lat.generators(),
            "class_representatives": lat.class_representatives(),
            "simply_connected": lat.is_simply_connected(),
            "adjoint": lat.is_adjoint(),
        },
    }))
}

fn order_kind(order: OrderArg, lambda: Option<Weight>) -> Result<OrderKind, CliError> {
    let need = |l: Option<Weight>| {
        l.ok_or_else(|| CliError::Usage(format!("order `{order:?}` needs --lambda")))
    };
    Ok(match order {
        OrderArg::Dominance => OrderKind::Dominance,
        OrderArg::Rational => OrderKind::RationalDominance,
        OrderArg::Lambda => OrderKind::LambdaDominance(need(lambda)?),
        OrderArg::LambdaRational => OrderKind::LambdaRationalDominance(need(lambda)?),
    })
}

fn compare_all(
    lat: &CharacterLattice,
    nu: &Weight,
    mu: &Weight,
    lambda: Option<&Weight>,
) -> Result<Value, CliError> {
    let rs = lat.root_system();
    let diff = nu - mu;
    let mut le = Map::new();
    le.insert("dominance".into(), json!(compare(rs, nu, mu, &OrderKind::Dominance)?));
    le.insert(
        "rational_dominance".into(),
        json!(compare(rs, nu, mu, &OrderKind::RationalDominance)?),
    );
    let mut out = Map::new();
    if let Some(l) = lambda {
        le.insert(
            "lambda_dominance".into(),
            json!(compare(rs, nu, mu, &OrderKind::LambdaDominance(l.clone()))?),
        );
        le.insert(
            "lambda_rational_dominance".into(),
            json!(compare(rs, nu, mu, &OrderKind::LambdaRationalDominance(l.clone()))?),
        );
        out.insert("difference_in_lambda_cone".into(), json!(cone_lambda_contains(rs, l, &diff)?));
    }
    out.insert("group".into(), json!(lat.describe()));
    out.insert("nu".into(), json!(nu));
    out.insert("mu".into(), json!(mu));
    out.insert("lambda".into(), json!(lambda));
    out.insert("difference".into(), json!(diff));
    out.insert("difference_root_coords".into(), json!(rs.root_coords(&diff)));
    out.insert("nu_le_mu".into(), Value::Object(le));
    Ok(Value::Object(out))
}

fn verdict_json(v: &Verdict) -> Map<String, Value> {
    let mut m = object(json!(v));
    if let Certificate::Normality { missing, .. } = &v.certificate {
        m.insert("missing".into(), json!(missing));
    }
    m
}

fn classify(lat: &CharacterLattice, pi: &WeightSet, q: QuestionArg) -> Result<Value, CliError> {
    let classification = classify_pi(pi, lat)?;
    let verdict = |q: QuestionArg| -> Result<Verdict, CliError> {
        Ok(match q {
            QuestionArg::Normality => normality(pi, lat)?,
            QuestionArg::QFactoriality => q_factoriality(pi, lat)?,
            QuestionArg::LocalFactoriality => local_factoriality(pi, lat)?,
            QuestionArg::Smoothness => smoothness(pi, lat)?,
            QuestionArg::All => unreachable!("expanded by the caller"),
        })
    };
    let mut out = if q == QuestionArg::All {
        let all = [
            QuestionArg::Normality,
            QuestionArg::QFactoriality,
            QuestionArg::LocalFactoriality,
            QuestionArg::Smoothness,
        ]
        .into_iter()
        .map(|q| verdict(q).map(|v| Value::Object(verdict_json(&v))))
        .collect::<Result<Vec<_>, _>>()?;
        let mut m = Map::new();
        m.insert("verdicts".into(), Value::Array(all));
        m
    } else {
        verdict_json(&verdict(q)?)
    };
    out.insert("group".into(), json!(lat.describe()));
    out.insert("pi".into(), json!(pi));
    out.insert("classification".into(), json!(classification));
    Ok(Value::Object(out))
}

const TYPES: [CartanType; 7] = [
    CartanType::A,
    CartanType::B,
    CartanType::C,
    CartanType::D,
    CartanType::E,
    CartanType::F,
    CartanType::G,
];

fn sweep(max_rank: usize, choice: LatticeChoice, s: &Settings) -> Result<Value, CliError> {
    let mut lattices = Vec::new();
    let mut supports: u128 = 0;
    for kind in TYPES {
        for rank in 1..=max_rank {
            if !kind.valid_rank(rank) {
                continue;
            }
            let rs = Arc::new(RootSystem::simple(kind, rank)?);
            let lats = match choice {
                LatticeChoice::Sc => vec![CharacterLattice::simply_connected(rs)],
                LatticeChoice::Ad => vec![CharacterLattice::adjoint(rs)],
                LatticeChoice::All => CharacterLattice::all_sublattices(rs),
            };
            for lat in lats {
                supports += (1u128 << rank.min(127)) - 1;
                if supports > s.max_candidates as u128 {
                    return Err(Error::ResourceCap {
                        what: "supports in sweep",
                        limit: s.max_candidates as u128,
                    }
                    .into());
                }
                lattices.push(lat);
            }
        }
    }
    let mut rows = Vec::new();
    for lat in &lattices {
        let rank = lat.rank();
        for mask in 1..(1u64 << rank) {
            let support = SimpleRootSet::from_mask(rank, mask);
            let cone = colored_cone(&support, lat)?;
            let smooth = timashev_check(&support, lat)?;
            rows.push(json!({
                "group": lat.describe(),
                "support": support,
                "q_factorial": cone.is_simplicial,
                "locally_factorial": cone.is_unimodular_basis,
                "smooth": smooth.answer,
            }));
        }
    }
    Ok(json!({
        "max_rank": max_rank,
        "lattices": lattices.len(),
        "rows": rows,
    }))
}

/// Multisets of `k` indices below `n`, in lexicographic order.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i, cur, out);
            cur.pop();
        }
    }
    go(n, k, 0, &mut cur, &mut out);
    out
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn oracle(cmd: &OracleCommand, s: &Settings) -> Result<Value, CliError> {
    let limits = s.oracle_limits();
    match cmd {
        OracleCommand::Multiplicities { group: g, lambda } => {
            let lat = group(g, s)?;
            let rs = lat.root_system();
            let lambda = weight("lambda", lambda, rs)?;
            let table = weight_multiplicities_with(rs, &lambda, limits)?;
            Ok(json!({
                "group": lat.describe(),
                "lambda": lambda,
                "dimension": big(weyl_dimension(rs, &lambda)?),
                "dominant_multiplicities": table,
            }))
        }
        OracleCommand::Tensor { group: g, lambda, mu } => {
            let lat = group(g, s)?;
            let rs = lat.root_system();
            let lambda = weight("lambda", lambda, rs)?;
            let mu = weight("mu", mu, rs)?;
            let d = tensor_decompose_with(rs, &lambda, &mu, limits)?;
            let mut out = object(json!(d));
            out.insert("group".into(), json!(lat.describe()));
            out.insert(
                "dimension".into(),
                big(weyl_dimension(rs, &lambda)? * weyl_dimension(rs, &mu)?),
            );
            Ok(Value::Object(out))
        }
        OracleCommand::Contains { group: g, nu, factors } => {
            let lat = group(g, s)?;
            let rs = lat.root_system();
            let nu = weight("nu", nu, rs)?;
            let factors = weights("factors", factors, rs)?;
            Ok(json!({
                "group": lat.describe(),
                "nu": nu,
                "factors": factors,
                "contains": contains_in_tensor_with(rs, &nu, &factors, limits)?,
            }))
        }
        OracleCommand::Products { group: g, lambda, nu, degree } => {
            let lat = group(g, s)?;
            let rs = lat.root_system();
            let lambda = weight("lambda", lambda, rs)?;
            let nu = weight("nu", nu, rs)?;
            let pool = pi_g_plus(&lat, &lambda)?;
            let n = pool.len() as u128;
            let count = binomial(n + *degree as u128 - 1, *degree as u128);
            if n > 0 && count > s.max_candidates as u128 {
                return Err(Error::ResourceCap {
                    what: "factor multisets",
                    limit: s.max_candidates as u128,
                }
                .into());
            }
            let pool = pool.as_slice();
            let mut products = Vec::new();
            let mut any = false;
            for idx in multisets(pool.len(), *degree) {
                let factors: Vec<Weight> = idx.iter().map(|&i| pool[i].clone()).collect();
                let contains = contains_in_tensor_with(rs, &nu, &factors, limits)?;
                any |= contains;
                products.push(json!({ "factors": factors, "contains": contains }));
            }
            Ok(json!({
                "group": lat.describe(),
                "lambda": lambda,
                "nu": nu,
                "degree": degree,
                "pi_g_plus": pool,
                "products": products,
                "contained_in_any": any,
            }))
        }
        OracleCommand::Prv { group: g, lambda, mu, w, w_prime } => {
            let lat = group(g, s)?;
            let rs = lat.root_system();
            let lambda = weight("lambda", lambda, rs)?;
            let mu = weight("mu", mu, rs)?;
            let w = word("w", w, rs.rank())?;
            let w_prime = word("w_prime", w_prime, rs.rank())?;
            let nu = prv_weight(rs, &lambda, &mu, &w, &w_prime);
            let factors = [lambda.clone(), mu.clone()];
            Ok(json!({
                "group": lat.describe(),
                "lambda": lambda,
                "mu": mu,
                "w": w,
                "w_prime": w_prime,
                "nu": nu,
                "contains": contains_in_tensor_with(rs, &nu, &factors, limits)?,
            }))
        }
        OracleCommand::Omega { group: g, pi, target, max_n } => {
            let lat = group(g, s)?;
            let rs = lat.root_system();
            let pi = WeightSet::from_vec(weights("pi", pi, rs)?);
            let target = weight("target", target, rs)?;
            let result = omega_membership(&lat, &pi, &target, *max_n)?;
            Ok(json!({
                "group": lat.describe(),
                "pi": pi,
                "target": target,
                "max_n": max_n,
                "result": result,
            }))
        }
        OracleCommand::VerifyNormality { group: g, pi, max_n } => {
            let lat = group(g, s)?;
            let pi = WeightSet::from_vec(weights("pi", pi, lat.root_system())?);
            let check = verify_normality_bruteforce_with(&lat, &pi, *max_n, limits)?;
            let mut out = object(json!(check));
            out.insert("group".into(), json!(lat.describe()));
            out.insert("pi".into(), json!(pi));
            out.insert("max_n".into(), json!(max_n));
            Ok(Value::Object(out))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_are_one_based() {
        assert_eq!(word("w", "1,2,1", 2).unwrap(), WeylWord(vec![0, 1, 0]));
        assert_eq!(word("w", " ", 2).unwrap(), WeylWord(vec![]));
        match word("w", "1, 3", 2) {
            Err(CliError::Argument {
                source: Error::Parse { position, .. },
                ..
            }) => assert_eq!(position, 3),
            other => panic!("{other:?}"),
        }
        assert!(word("w", "1,x", 2).is_err());
    }

    #[test]
    fn multiset_counts() {
        for (n, k) in [(1, 3), (3, 2), (4, 3), (5, 1)] {
            assert_eq!(multisets(n, k).len() as u128, binomial(n as u128 + k as u128 - 1, k as u128));
        }
        assert_eq!(multisets(2, 2), vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
    }
}
