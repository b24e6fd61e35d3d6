//! End-to-end acceptance checks: one pass/fail line per shipped guarantee.
//! Run `cargo test -p cfpo-core --test acceptance -- --nocapture` to see
//! the lines as they complete.

use std::collections::HashSet;
use std::error::Error;
use std::time::Instant;

use cfpo_core::a5::census::{
    census_from_group, engineered_census, AbstractCensus, InstanceCensus,
};
use cfpo_core::a5::constructions::{
    right_translation_listings, star30_family, star60_family, supports_cover,
};
use cfpo_core::formula::atoms::{AtomBackend, SemanticAtoms, SyntacticAtoms};
use cfpo_core::formula::composite::{semantic, semantic_reps, CompositeEval};
use cfpo_core::formula::crosscheck::crosscheck_atoms;
use cfpo_core::generators::generate_from_spec;
use cfpo_core::group::{
    automorphism_group, EnumeratedGroup, FiniteGroup, DEFAULT_GROUP_ORDER_BOUND,
};
use cfpo_core::instance::CfpoInstance;
use cfpo_core::reconstruct::{
    recover_order, reconstruct_semi_abstract, reference_order, reference_relations, ternary_iso,
    ReconstructionModel,
};

type Outcome = Result<String, Box<dyn Error>>;

fn err(msg: String) -> Box<dyn Error> {
    msg.into()
}

/// Enumerated group plus aligned abstract and instance censuses.
fn enumerated(spec: &str) -> Result<(CfpoInstance, EnumeratedGroup, AbstractCensus, InstanceCensus), Box<dyn Error>> {
    let inst = generate_from_spec(spec)?;
    let group = automorphism_group(&inst).enumerate(inst.len(), DEFAULT_GROUP_ORDER_BOUND)?;
    let (census, abs) = census_from_group(&inst, &group)?;
    Ok((inst, group, abs, census))
}

/// The censuses of the standard suite: enumerated where the group is small,
/// engineered elsewhere.
fn standard_suite_censuses() -> Result<Vec<(String, InstanceCensus)>, Box<dyn Error>> {
    let mut out = Vec::new();
    for spec in ["star:5,0", "star:6,0"] {
        let (_, _, _, census) = enumerated(spec)?;
        out.push((spec.to_string(), census));
    }
    for spec in ["alt:5,5,1", "alt:5,5,2", "chain-dec:5,5,3,1"] {
        let inst = generate_from_spec(spec)?;
        out.push((spec.to_string(), engineered_census(&inst)?));
    }
    Ok(out)
}

/// Exactly one A5 subgroup with 120 listings on the 5-leaf star, matching a
/// brute-force enumerator that closes every element pair, in under 10 s.
fn c01_a5_census() -> Outcome {
    let start = Instant::now();
    let (_, group, abs, _) = enumerated("star:5,0")?;
    let n = group.order();
    let mut found: HashSet<Vec<usize>> = HashSet::new();
    for a in 0..n {
        for b in 0..n {
            // Bounded closure of {a, b}: abandon past 60 elements.
            let mut seen = vec![false; n];
            let mut members = vec![group.id()];
            seen[group.id()] = true;
            let mut queue = vec![group.id()];
            let mut overflow = false;
            while let Some(x) = queue.pop() {
                for g in [a, b] {
                    let y = group.mul(g, x);
                    if !seen[y] {
                        seen[y] = true;
                        members.push(y);
                        queue.push(y);
                        if members.len() > 60 {
                            overflow = true;
                            queue.clear();
                            break;
                        }
                    }
                }
                if overflow {
                    break;
                }
            }
            if !overflow && members.len() == 60 {
                members.sort_unstable();
                found.insert(members);
            }
        }
    }
    if found.len() != 1 {
        return Err(err(format!("brute force found {} order-60 subgroups", found.len())));
    }
    if abs.subgroups.len() != 1 {
        return Err(err(format!("census lists {} subgroups", abs.subgroups.len())));
    }
    if !found.contains(&abs.subgroups[0].elements) {
        return Err(err("census subgroup differs from brute-force subgroup".into()));
    }
    if abs.subgroups[0].listing_count != 120 {
        return Err(err(format!("{} listings, expected 120", abs.subgroups[0].listing_count)));
    }
    let elapsed = start.elapsed();
    if elapsed.as_secs() >= 10 {
        return Err(err(format!("took {elapsed:.2?}, budget 10 s")));
    }
    Ok(format!("1 subgroup, 120 listings, brute force agrees ({elapsed:.2?})"))
}

/// Every census tuple over the standard suite fixes at least one point.
fn c02_fixed_points() -> Outcome {
    let mut total = 0;
    for (spec, census) in standard_suite_censuses()? {
        for (i, e) in census.entries.iter().enumerate() {
            total += 1;
            if e.tuple.fixed_points().is_empty() {
                return Err(err(format!("{spec} entry {i} fixes no point")));
            }
        }
    }
    Ok(format!("{total} tuples across 5 instances, all with fixed points"))
}

/// Orbit sizes of every census tuple lie in {1,5,6,10,12,15,20,30,60}.
fn c03_orbit_sizes() -> Outcome {
    const LEGAL: [usize; 9] = [1, 5, 6, 10, 12, 15, 20, 30, 60];
    let mut total = 0;
    for (spec, census) in standard_suite_censuses()? {
        for (i, e) in census.entries.iter().enumerate() {
            for orbit in e.tuple.orbits() {
                total += 1;
                if !LEGAL.contains(&orbit.len()) {
                    return Err(err(format!("{spec} entry {i}: orbit of size {}", orbit.len())));
                }
            }
        }
    }
    Ok(format!("{total} orbits, sizes all in the legal set"))
}

/// The 30-orbit splits as a commuting coordinate product, entrywise.
fn c04_orbit_30_split() -> Outcome {
    let fam = star30_family()?;
    if !fam.first.commutes_with(&fam.second) {
        return Err(err("coordinate tuples fail to commute".into()));
    }
    let star = fam.first.star(&fam.second)?;
    if star.entries() != fam.diagonal.entries() {
        return Err(err("coordinate product differs from the diagonal tuple".into()));
    }
    if !supports_cover(&fam.diagonal, &fam.first, &fam.second) {
        return Err(err("support covering fails".into()));
    }
    Ok("commuting split reproduces the diagonal on all 60 entries".into())
}

/// The translation pair on the 60-leaf star: commuting, overlapping at the
/// identity leaf, with the product fixing that leaf.
fn c05_sixty_counterexample() -> Outcome {
    let fam = star60_family()?;
    if !fam.left.commutes_with(&fam.right) {
        return Err(err("translations fail to commute".into()));
    }
    let id_leaf = 1usize; // root is dense index 0, leaves follow in order
    if fam.left.support().binary_search(&id_leaf).is_err()
        || fam.right.support().binary_search(&id_leaf).is_err()
    {
        return Err(err("identity leaf missing from a support".into()));
    }
    if fam.product.entries().iter().any(|p| p.apply(id_leaf) != id_leaf) {
        return Err(err("identity leaf moved by the product".into()));
    }
    Ok("3600 commuting pairs, shared identity leaf, leaf fixed by the product".into())
}

fn syntactic_for(
    group: &EnumeratedGroup,
    abs: &AbstractCensus,
    census: &InstanceCensus,
) -> Result<SyntacticAtoms, Box<dyn Error>> {
    let supports: Vec<Vec<usize>> = census.entries.iter().map(|e| e.support.clone()).collect();
    Ok(SyntacticAtoms::build(group, abs, Some(&supports))?)
}

/// Backend agreement on the fully-enumerable agreement suite, including the
/// strict-subset and same-point formulas, with the known scale artifacts on
/// star:6,0 and star:5,5 confined to the documented atoms.
fn c06_backend_agreement() -> Outcome {
    let mut checked = 0;
    for spec in ["star:5,0", "star:5,2", "star:2,2", "alt:1,1,3"] {
        let (_, group, abs, census) = enumerated(spec)?;
        let syn = syntactic_for(&group, &abs, &census)?;
        let discrepancies = crosscheck_atoms(&census, &syn);
        if let Some(d) = discrepancies.first() {
            return Err(err(format!("{spec}: {} diverges at {:?}", d.atom, d.args)));
        }
        let sem = SemanticAtoms::new(&census);
        let n = census.entries.len();
        for i in 0..n {
            for j in 0..n {
                checked += 1;
                if sem.subsetneq(i, j) != syn.subsetneq(i, j) {
                    return Err(err(format!("{spec}: strict subset diverges at ({i},{j})")));
                }
            }
        }
        let reps = semantic_reps(&census);
        let sem_eval = CompositeEval::with_reps(&sem, reps.clone());
        let syn_eval = CompositeEval::with_reps(&syn, reps.clone());
        for p in 0..reps.len() {
            for q in 0..reps.len() {
                checked += 1;
                if sem_eval.eq_rep(p, q) != syn_eval.eq_rep(p, q) {
                    return Err(err(format!("{spec}: point equality diverges at ({p},{q})")));
                }
            }
        }
        checked += 4 * n * n + n;
    }
    // The two larger stars deviate for a documented finite-scale reason
    // (ambient nesting / absent direction witnesses); confirm the deviation
    // stays confined to the subset-family atoms.
    for spec in ["star:6,0", "star:5,5"] {
        let (_, group, abs, census) = enumerated(spec)?;
        let syn = syntactic_for(&group, &abs, &census)?;
        for d in crosscheck_atoms(&census, &syn) {
            if !["subseteq", "same_pd", "rep_point"].contains(&d.atom.as_str()) {
                return Err(err(format!("{spec}: unexpected divergence in {}", d.atom)));
            }
        }
    }
    Ok(format!("{checked} verdict pairs agree on the agreement suite; large-star deviations confined to documented atoms"))
}

/// The two quantifier renderings of the subset formula agree everywhere.
fn c07_rendering_agreement() -> Outcome {
    let mut total = 0;
    for spec in ["star:5,0", "star:5,2", "star:2,2", "alt:1,1,3", "star:6,0", "star:5,5"] {
        let (_, group, abs, census) = enumerated(spec)?;
        let syn = syntactic_for(&group, &abs, &census)?;
        if syn.renderings_agreed != syn.renderings_checked {
            return Err(err(format!(
                "{spec}: {} of {} rendered inputs disagree",
                syn.renderings_checked - syn.renderings_agreed,
                syn.renderings_checked
            )));
        }
        total += syn.renderings_checked;
    }
    if total == 0 {
        return Err(err("no rendered inputs anywhere in the suite".into()));
    }
    Ok(format!("{total} rendered inputs, 100% agreement"))
}

/// Composite betweenness/path/relatedness formulas match the tree oracles
/// on every represented triple of the named instances.
fn c08_betweenness_interpretation() -> Outcome {
    let budget = std::time::Duration::from_secs(600);
    let mut detail = Vec::new();
    for spec in ["alt:5,5,2", "chain-dec:5,5,3,2", "nested-star:5,5", "nested-star:6,5"] {
        let start = Instant::now();
        let inst = generate_from_spec(spec)?;
        let census = engineered_census(&inst)?;
        let atoms = SemanticAtoms::new(&census);
        let mut eval = CompositeEval::with_reps(&atoms, semantic_reps(&census));
        let classes = eval.classes();
        let pts: Vec<usize> = classes
            .iter()
            .map(|c| census.entries[eval.reps[c[0]].0].attachment.unwrap())
            .collect();
        let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
        let k = reps.len();
        let mut triples = 0;
        for a in 0..k {
            for b in 0..k {
                if a == b {
                    continue;
                }
                if eval.related(reps[a], reps[b]) != semantic::related(&inst, pts[a], pts[b])? {
                    return Err(err(format!("{spec}: related({},{})", pts[a], pts[b])));
                }
                for c in 0..k {
                    if c == a || c == b {
                        continue;
                    }
                    triples += 1;
                    let (h, f, g) = (reps[c], reps[a], reps[b]);
                    let (hp, fp, gp) = (pts[c], pts[a], pts[b]);
                    // Point-level path-betweenness quantifies the middle
                    // pair over its class: a single pair's support omits a
                    // cone wherever the ramification order exceeds five.
                    let pbf = classes[c].iter().any(|&m| eval.path_between(m, f, g));
                    if pbf != semantic::path_between(&inst, hp, fp, gp)? {
                        return Err(err(format!("{spec}: path_between({hp};{fp},{gp})")));
                    }
                    if eval.b_rel(h, f, g) != semantic::b_rel(&inst, hp, fp, gp)? {
                        return Err(err(format!("{spec}: B({hp};{fp},{gp})")));
                    }
                }
            }
        }
        if start.elapsed() > budget {
            return Err(err(format!("{spec}: exceeded the 10 min budget")));
        }
        detail.push(format!(
            "{spec}: {triples} triples{}",
            if triples == 0 { " (no represented pairs; vacuous, documented)" } else { "" }
        ));
    }
    Ok(detail.join("; "))
}

/// The recovered relations are isomorphic to the ground-truth betweenness
/// reduct on every instance with a nonempty represented-point census.
fn c09_faithfulness() -> Outcome {
    let mut detail = Vec::new();
    for spec in ["nested-star:5,5", "nested-star:6,5", "nested-star:6,6", "alt:6,6,1"] {
        let inst = generate_from_spec(spec)?;
        let rec = reconstruct_semi_abstract(&inst)?;
        if rec.num_classes == 0 {
            return Err(err(format!("{spec}: represented-point census unexpectedly empty")));
        }
        let points = rec.class_points.clone().unwrap();
        let (rel_ref, bet_ref) = reference_relations(&inst, &points)?;
        if rec.related != rel_ref {
            return Err(err(format!("{spec}: comparability differs from ground truth")));
        }
        if ternary_iso(&rec.between, &bet_ref).is_none() {
            return Err(err(format!("{spec}: no betweenness isomorphism")));
        }
        detail.push(format!("{spec}: {} classes", rec.num_classes));
    }
    Ok(detail.join("; "))
}

/// Graded order recovery: exact against the tree order, reversed exactly
/// under parameter swap; the extra level-one disjunct recorded when needed.
fn c10_order_recovery() -> Outcome {
    // The named alternating tree has an empty represented-point census at
    // this scale (documented), so its pair set is vacuous; assert that and
    // run the substantive check on instances with interior representables.
    let vac = reconstruct_semi_abstract(&generate_from_spec("alt:5,5,2")?)?;
    let mut detail = vec![format!("alt:5,5,2: {} represented pairs (vacuous, documented)", vac.num_classes)];
    for spec in ["nested-star:5,5", "nested-star:6,6"] {
        let inst = generate_from_spec(spec)?;
        let rec = reconstruct_semi_abstract(&inst)?;
        let points = rec.class_points.clone().unwrap();
        let less_ref = reference_order(&inst, &points)?;
        let k = points.len();
        let (y1, y2) = (0..k)
            .flat_map(|a| (0..k).map(move |b| (a, b)))
            .find(|&(a, b)| less_ref[a][b])
            .ok_or_else(|| err(format!("{spec}: no comparable pair")))?;
        // n_max: the longest path length between represented points.
        let mut n_max = 0;
        for &a in &points {
            for &b in &points {
                let p = inst.path(inst.point_at(a), inst.point_at(b))?;
                n_max = n_max.max(p.points.len().saturating_sub(1));
            }
        }
        let mut m = ReconstructionModel::new(&rec);
        let out = recover_order(&mut m, y1, y2, n_max, true);
        if out.less != less_ref {
            return Err(err(format!("{spec}: recovered order differs from the tree order")));
        }
        let mut m2 = ReconstructionModel::new(&rec);
        let swapped = recover_order(&mut m2, y2, y1, n_max, true);
        for a in 0..k {
            for b in 0..k {
                if swapped.less[a][b] != out.less[b][a] {
                    return Err(err(format!("{spec}: swap fails to reverse at ({a},{b})")));
                }
            }
        }
        let mut m3 = ReconstructionModel::new(&rec);
        let no_a5 = recover_order(&mut m3, y1, y2, n_max, false);
        let note = if no_a5.less == less_ref {
            "alpha5 immaterial"
        } else {
            "alpha5=on required and recorded"
        };
        detail.push(format!("{spec}: exact on {k} classes, swap reversed, {note}"));
    }
    Ok(detail.join("; "))
}

/// Commuting-pair support covering, no component flipping, and the long
/// orbit pattern on the engineered fixtures.
fn c11_commuting_pair_properties() -> Outcome {
    // Support covering on every commuting pair with a valid product.
    let inst = generate_from_spec("nested-star:5,5")?;
    let census = engineered_census(&inst)?;
    let entries = &census.entries;
    let subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.binary_search(x).is_ok());
    let mut covering_pairs = 0;
    for i in 0..entries.len() {
        for j in 0..entries.len() {
            if i == j || !entries[i].tuple.commutes_with(&entries[j].tuple) {
                continue;
            }
            let Ok(star) = entries[i].tuple.star(&entries[j].tuple) else { continue };
            covering_pairs += 1;
            if !subset(&entries[i].support, &star.support())
                || !subset(&entries[j].support, &star.support())
            {
                return Err(err(format!("support covering fails on pair ({i},{j})")));
            }
        }
    }
    if covering_pairs == 0 {
        return Err(err("no commuting pairs with a valid product in the fixture".into()));
    }
    // The translation pair is the documented violation when the overlap
    // hypothesis fails: its product loses the identity leaf.
    let fam = star60_family()?;
    if supports_cover(&fam.product, &fam.left, &fam.right) {
        return Err(err("translation pair unexpectedly satisfies support covering".into()));
    }
    // No flipping: components of the commuting overlapping pair nest.
    let fc = fam.left.extended_components(&fam.instance)?;
    let gc = fam.right.extended_components(&fam.instance)?;
    for a in &fc {
        for b in &gc {
            let meet = a.points.iter().any(|p| b.points.binary_search(p).is_ok());
            if meet && !subset(&a.points, &b.points) && !subset(&b.points, &a.points) {
                return Err(err("overlapping components fail to nest".into()));
            }
        }
    }
    // Long orbits: every relisting of the right translation yields an orbit
    // of length exactly 20 plus a nontrivial orbit of a different length.
    let mut relistings = 0;
    for right in right_translation_listings(&fam) {
        let star = fam.left.star(&right)?;
        let sizes: Vec<usize> = star.orbits().iter().map(|o| o.len()).collect();
        if !sizes.contains(&20) || !sizes.iter().any(|&s| s != 20 && s != 1) {
            return Err(err(format!("relisting {relistings}: orbit sizes {sizes:?}")));
        }
        relistings += 1;
    }
    Ok(format!(
        "{covering_pairs} covering pairs, nesting on the translation pair, {relistings} relistings with a 20-orbit plus another"
    ))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("a5 census vs brute force", c01_a5_census),
        ("fixed points on the standard suite", c02_fixed_points),
        ("orbit-size law", c03_orbit_sizes),
        ("30-orbit split", c04_orbit_30_split),
        ("60-star counterexample", c05_sixty_counterexample),
        ("backend agreement", c06_backend_agreement),
        ("rendering agreement", c07_rendering_agreement),
        ("betweenness interpretation", c08_betweenness_interpretation),
        ("faithful reconstruction", c09_faithfulness),
        ("order recovery", c10_order_recovery),
        ("commuting-pair properties", c11_commuting_pair_properties),
    ];
    let mut failures = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:02} PASS {name}: {detail}", i + 1),
            Err(e) => {
                println!("criterion {:02} FAIL {name}: {e}", i + 1);
                failures.push(format!("{:02} {name}: {e}", i + 1));
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria:\n{}", failures.join("\n"));
}
