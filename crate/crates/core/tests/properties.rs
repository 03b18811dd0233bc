mod common;

use std::collections::BTreeSet;

use hyperdelta::delta::{
    complete_semi, edge_partitions, find_avd_system, find_sunflower, is_avd, is_semi_avb, is_sunflower,
};
use hyperdelta::extremal::{max_avoiding, ForbiddenConfig};
use hyperdelta::hypergraph::{kruskal_katona_bound, kruskal_katona_x, real_binomial};
use hyperdelta::intersecting::{
    check_km_codegree_bounds, classify_intersecting, find_nontrivial_subfamily, is_d_simplex, is_dwise_intersecting,
    is_nontrivial, km_template, KmFamily, KmTag,
};
use hyperdelta::intersection::{extract_homogeneous, is_homogeneous};
use hyperdelta::{Budget, Hypergraph, VertexSet};
use num::{BigInt, BigRational, One, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

fn arb_hypergraph(max_n: usize, ks: &'static [usize]) -> impl Strategy<Value = Hypergraph> {
    (any::<u64>(), 0.05f64..0.7, proptest::sample::select(ks)).prop_flat_map(move |(seed, p, k)| {
        (k.max(3)..=max_n).prop_map(move |n| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            random_hypergraph(&mut rng, n, k, p)
        })
    })
}

/// `|∂H|` by scanning every `(k-1)`-subset of `[n]`.
fn brute_shadow_size(h: &Hypergraph) -> usize {
    VertexSet::full(h.n())
        .subsets_of_size(h.k() - 1)
        .filter(|s| h.edges().iter().any(|e| s.is_subset(*e)))
        .count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn weights_sum_to_shadow_size(h in arb_hypergraph(10, &[2, 3, 4])) {
        let mut sum = BigRational::zero();
        for &e in h.edges() {
            let mut w = BigRational::zero();
            for s in e.subsets_of_size(h.k() - 1) {
                let deg = h.edges().iter().filter(|f| s.is_subset(**f)).count();
                w += BigRational::new(BigInt::one(), BigInt::from(deg));
            }
            prop_assert_eq!(&w, &h.edge_weight(e).unwrap());
            sum += w;
        }
        let shadow = BigRational::from_integer(BigInt::from(brute_shadow_size(&h)));
        prop_assert_eq!(&sum, &shadow);
        prop_assert_eq!(h.total_weight(), shadow);
    }

    #[test]
    fn shadows_are_monotone(h in arb_hypergraph(9, &[3, 4]), keep in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(keep);
        let g = h.filter(|_| rng.gen_bool(0.5));
        for i in 0..h.k() {
            let big: BTreeSet<VertexSet> = h.shadow(i).unwrap().into_iter().collect();
            for s in g.shadow(i).unwrap() {
                prop_assert!(big.contains(&s));
            }
        }
    }

    #[test]
    fn shadow_matches_brute_force(h in arb_hypergraph(8, &[2, 3, 4])) {
        prop_assert_eq!(h.shadow(1).unwrap().len(), brute_shadow_size(&h));
        prop_assert_eq!(h.shadow(0).unwrap(), h.edges().to_vec());
    }

    #[test]
    fn kruskal_katona_for_triples(h in arb_hypergraph(9, &[3])) {
        prop_assume!(!h.is_empty());
        let x = kruskal_katona_x(h.len() as u128, 3);
        prop_assert!((real_binomial(x, 3) - h.len() as f64).abs() <= 1e-9 * (h.len() as f64).max(1.0));
        let bound = kruskal_katona_bound(h.len() as u128, 3);
        prop_assert!(h.shadow(1).unwrap().len() as f64 >= bound - 1e-9);
    }

    #[test]
    fn kruskal_katona_for_graphs(h in arb_hypergraph(9, &[2])) {
        prop_assume!(!h.is_empty());
        let x = kruskal_katona_x(h.len() as u128, 2);
        // |H| = C(x,2) edges span at least x vertices
        prop_assert!(h.shadow(1).unwrap().len() as f64 >= x - 1e-9);
    }

    #[test]
    fn wiseness_is_downward_closed(h in arb_hypergraph(8, &[3, 4]), d in 2usize..6) {
        prop_assume!(!h.is_empty() && h.len() <= 12);
        let fam = h.edges();
        let dw = is_dwise_intersecting(fam, d).unwrap();
        prop_assert_eq!(dw, naive_dwise(fam, d));
        if dw {
            for d2 in 2..=d {
                prop_assert!(is_dwise_intersecting(fam, d2).unwrap());
            }
        }
    }

    #[test]
    fn nontrivial_search_matches_enumeration(seed in any::<u64>(), n in 5usize..8, m in 4usize..15, t in 3usize..6, d in 2usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_hypergraph_m(&mut rng, n, 3, m);
        let out = find_nontrivial_subfamily(&h, t, d, &Budget::default()).unwrap();
        prop_assert!(!out.is_exhausted());
        let naive = naive_has_nontrivial(h.edges(), t, d);
        prop_assert_eq!(out.is_found(), naive);
        if let Some(w) = out.found() {
            prop_assert_eq!(w.edges.len(), t);
            prop_assert!(w.edges.iter().all(|e| h.contains(*e)));
            prop_assert!(is_nontrivial(&w.edges, d).unwrap().holds());
        }
    }

    #[test]
    fn sunflower_search_matches_enumeration(seed in any::<u64>(), n in 5usize..9, m in 2usize..14, c in 0usize..3, s in 2usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_hypergraph_m(&mut rng, n, 3, m);
        let center: VertexSet = h.edges()[0].iter().take(c).collect();
        let found = find_sunflower(&h, center, s).unwrap();
        let through: Vec<VertexSet> = h.edges().iter().copied().filter(|e| center.is_subset(*e)).collect();
        let naive = index_subsets(through.len(), s).into_iter().any(|idx| {
            let fam: Vec<VertexSet> = idx.iter().map(|&i| through[i]).collect();
            is_sunflower(&fam).unwrap().witness().is_some_and(|w| w.center == center)
        });
        prop_assert_eq!(found.is_some(), naive);
        if let Some(w) = found {
            prop_assert_eq!(w.petals.len(), s);
            prop_assert_eq!(is_sunflower(&w.petals).unwrap().witness().unwrap().center, center);
        }
    }

    #[test]
    fn avd_search_matches_enumeration(seed in any::<u64>(), n in 5usize..8, m in 3usize..13, shape in 0usize..4) {
        let (a, d): (Vec<usize>, usize) = [(vec![2, 1], 2), (vec![1, 2], 3), (vec![1, 1, 1], 3), (vec![2, 1], 3)][shape].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_hypergraph_m(&mut rng, n, 3, m);
        let out = find_avd_system(&h, &a, d, &Budget::default()).unwrap();
        prop_assert_eq!(out.is_found(), naive_has_avd(h.edges(), &a, d));
        if let Some(w) = out.found() {
            prop_assert!(is_avd(&w, d).unwrap().holds());
            prop_assert_eq!(w.a(), a);
            prop_assert!(w.edges().iter().all(|e| h.contains(*e)));
        }
    }

    #[test]
    fn avd_absence_is_inherited(seed in any::<u64>(), n in 5usize..8, m in 3usize..15) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_hypergraph_m(&mut rng, n, 3, m);
        let b = Budget::default();
        if find_avd_system(&h, &[2, 1], 2, &b).unwrap().is_not_found() {
            let g = h.filter(|_| rng.gen_bool(0.6));
            if !g.is_empty() {
                prop_assert!(find_avd_system(&g, &[2, 1], 2, &b).unwrap().is_not_found());
            }
        }
    }

    #[test]
    fn planted_avd_is_recovered(seed in any::<u64>(), shape in 0usize..4, noise in 0usize..12) {
        let (a, b): (Vec<usize>, Vec<usize>) = [(vec![2, 1], vec![1, 1]), (vec![2, 2], vec![1, 2]), (vec![1, 1, 1], vec![1, 1, 1]), (vec![3, 1], vec![2, 1])][shape].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_avd_witness(&mut rng, &a, &b);
        let d: usize = b.iter().sum();
        let k: usize = a.iter().sum();
        let used = w.edges().iter().fold(VertexSet::EMPTY, |acc, e| acc.union(*e));
        let n = used.max_vertex().unwrap() as usize + 2;
        let mut edges: BTreeSet<VertexSet> = w.edges().into_iter().collect();
        let mut all: Vec<VertexSet> = VertexSet::full(n).subsets_of_size(k).collect();
        all.shuffle(&mut rng);
        edges.extend(all.into_iter().take(noise));
        let h = Hypergraph::new(n, k, edges).unwrap();
        let found = find_avd_system(&h, &a, d, &Budget::default()).unwrap().found();
        prop_assert!(found.is_some());
        prop_assert!(is_avd(&found.unwrap(), d).unwrap().holds());
    }

    #[test]
    fn completion_always_succeeds(seed in any::<u64>(), shape in 0usize..4) {
        let a: Vec<usize> = [vec![2, 1], vec![2, 2], vec![3, 1], vec![2, 1, 1]][shape].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b: Vec<usize> = a.iter().map(|_| rng.gen_range(1..=3)).collect();
        let mut c = Vec::new();
        let mut prefix = 0;
        for i in 0..a.len() {
            c.push(b[i] + prefix + rng.gen_range(0..=2));
            prefix += a[i] * b[i];
        }
        let semi = random_semi_witness(&mut rng, &a, &c);
        prop_assert!(is_semi_avb(&semi).unwrap().holds());
        let full = complete_semi(&semi, &b).unwrap();
        prop_assert_eq!(full.b(), b.clone());
        prop_assert!(is_avd(&full, b.iter().sum()).unwrap().holds());
        let pool: BTreeSet<VertexSet> = semi.edges().into_iter().collect();
        prop_assert!(full.edges().iter().all(|e| pool.contains(e)));
    }

    #[test]
    fn wide_systems_are_nontrivially_intersecting(seed in any::<u64>(), p in 3usize..5, k_extra in 0usize..3, d_extra in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut a = vec![1usize; p];
        for _ in 0..k_extra {
            let i = rng.gen_range(0..p);
            a[i] += 1;
        }
        let mut b = vec![1usize; p];
        for _ in 0..d_extra {
            let i = rng.gen_range(0..p);
            b[i] += 1;
        }
        let w = random_avd_witness(&mut rng, &a, &b);
        let d: usize = b.iter().sum();
        prop_assert!(is_avd(&w, d).unwrap().holds());
        let edges = w.edges();
        prop_assert_eq!(edges.len(), d + 1);
        prop_assert!(is_nontrivial(&edges, p - 1).unwrap().holds());
    }

    #[test]
    fn template_subfamilies_meet_codegree_bounds(seed in any::<u64>(), tag_i in 0usize..4, e in 11usize..21) {
        let tag = [KmTag::H0, KmTag::H2, KmTag::H3, KmTag::H4][tag_i];
        let tag = if tag == KmTag::H4 && seed % 2 == 0 { KmTag::H5 } else { tag };
        let t = km_template(tag, 16).unwrap();
        prop_assume!(t.len() >= e);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = t.edges().to_vec();
        edges.shuffle(&mut rng);
        edges.truncate(e);
        let f = Hypergraph::new(16, 3, edges).unwrap();
        let fam = KmFamily { tag, map: (1..=tag.core_size() as u32).collect() };
        prop_assert!(check_km_codegree_bounds(&f, &fam).unwrap().holds());
    }

    #[test]
    fn classification_contains_relabelled_templates(seed in any::<u64>(), tag_i in 0usize..7, e in 11usize..18) {
        let tag = KmTag::ALL[tag_i];
        let n = 10;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = km_template(tag, n).unwrap();
        let mut perm: Vec<u32> = (1..=n as u32).collect();
        perm.shuffle(&mut rng);
        let mut edges: Vec<VertexSet> = t.edges().iter().map(|e| e.relabel(&perm)).collect();
        edges.shuffle(&mut rng);
        edges.truncate(e);
        let f = Hypergraph::new(n, 3, edges).unwrap();
        prop_assume!(f.len() >= 11);
        let km = classify_intersecting(&f).unwrap();
        let template = km.template(n).unwrap();
        prop_assert!(f.edges().iter().all(|e| template.contains(*e)));
        prop_assert!(KmTag::ALL.iter().position(|x| *x == km.tag) <= KmTag::ALL.iter().position(|x| *x == tag));
    }

    #[test]
    fn extraction_is_certified(seed in any::<u64>(), n in 4usize..10, p in 0.2f64..0.9, s in 2usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_hypergraph(&mut rng, n, 3, p);
        prop_assume!(!h.is_empty());
        let c = extract_homogeneous(&h, s, seed, 3).unwrap();
        prop_assert!(c.subgraph.edges().iter().all(|e| h.contains(*e)));
        prop_assert!(is_homogeneous(&c.subgraph, s, &c.partition).unwrap().certificate().is_some());
        prop_assert!(c.pattern.is_closed_under_intersection());
        prop_assert!(c.rank_shadow_bound_holds());
    }
}

#[test]
fn simplex_iff_nontrivial_on_small_families() {
    let all: Vec<VertexSet> = VertexSet::full(5).subsets_of_size(3).collect();
    for d in 2..=3 {
        for idx in index_subsets(all.len(), d + 1) {
            let fam: Vec<VertexSet> = idx.iter().map(|&i| all[i]).collect();
            assert_eq!(is_d_simplex(&fam, d).unwrap(), is_nontrivial(&fam, d).unwrap().holds());
        }
    }
}

#[test]
fn partitions_cover_each_set_partition_once() {
    let host = VertexSet::of(&[1, 2, 3, 4, 5, 6]);
    for a in [vec![2, 2, 2], vec![3, 3], vec![2, 2, 1, 1], vec![4, 1, 1]] {
        let canon = edge_partitions(host, &a);
        let ordered = all_ordered_partitions(host, &a);
        let key = |p: &Vec<VertexSet>| {
            let mut v: Vec<(usize, VertexSet)> = p.iter().map(|s| (s.len(), *s)).collect();
            v.sort();
            v
        };
        let distinct: BTreeSet<_> = ordered.iter().map(key).collect();
        assert_eq!(canon.len(), distinct.len(), "{a:?}");
        let canon_keys: BTreeSet<_> = canon.iter().map(key).collect();
        assert_eq!(canon_keys, distinct);
    }
}

/// Maximum over all families by plain enumeration, plus every maximum family
/// that contains the first edge.
fn naive_extremal(n: usize, k: usize, forbidden: &dyn Fn(&[VertexSet]) -> bool) -> (usize, Vec<Vec<VertexSet>>) {
    let all: Vec<VertexSet> = VertexSet::full(n).subsets_of_size(k).collect();
    let mut best = 0;
    let mut fams = Vec::new();
    for mask in 0u32..(1 << all.len()) {
        let fam: Vec<VertexSet> = (0..all.len()).filter(|&i| mask & (1 << i) != 0).map(|i| all[i]).collect();
        if fam.len() < best || forbidden(&fam) {
            continue;
        }
        if fam.len() > best {
            best = fam.len();
            fams.clear();
        }
        if mask & 1 == 1 {
            fams.push(fam);
        }
    }
    fams.sort();
    (best, fams)
}

#[test]
fn branch_and_bound_matches_enumeration() {
    let cases: Vec<(usize, usize, ForbiddenConfig)> = vec![
        (5, 3, ForbiddenConfig::NontrivialIntersecting { t: 3, d: 2 }),
        (5, 3, ForbiddenConfig::NontrivialIntersecting { t: 4, d: 2 }),
        (5, 3, ForbiddenConfig::AvdSystem { a: vec![2, 1], d: 2 }),
        (5, 2, ForbiddenConfig::NontrivialIntersecting { t: 3, d: 2 }),
        (6, 2, ForbiddenConfig::NontrivialIntersecting { t: 3, d: 2 }),
        (6, 2, ForbiddenConfig::AvdSystem { a: vec![1, 1], d: 2 }),
        (5, 4, ForbiddenConfig::Simplex { d: 2 }),
        (6, 5, ForbiddenConfig::Simplex { d: 3 }),
    ];
    for (n, k, cfg) in cases {
        let res = max_avoiding(n, k, &cfg, &Budget::default()).unwrap();
        assert!(res.exact && res.revalidated);
        let forbidden = |fam: &[VertexSet]| match &cfg {
            ForbiddenConfig::NontrivialIntersecting { t, d } => naive_has_nontrivial(fam, *t, *d),
            ForbiddenConfig::Simplex { d } => naive_has_nontrivial(fam, d + 1, *d),
            ForbiddenConfig::AvdSystem { a, d } => naive_has_avd(fam, a, *d),
        };
        let (best, fams) = naive_extremal(n, k, &forbidden);
        assert_eq!(res.max_size, best, "n={n} k={k} {cfg:?}");
        assert_eq!(res.families, fams, "n={n} k={k} {cfg:?}");
    }
}
