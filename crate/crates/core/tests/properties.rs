// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

mod common;

use std::collections::BTreeSet;

use common::*;
use multicolor_core::bounds::check_second_class_conditions;
use multicolor_core::coloring::{
    alg_c, exact_chromatic_index, greedy_color, grow_tashkinov, is_elementary, AlgCOutput,
    ColoringDocument,
};
use multicolor_core::graph::one_factorization;
use multicolor_core::sampling::TrialRng;
use multicolor_core::{color_optimal, lower_bound, verify, Multigraph};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn optimal_is_proper_and_sandwiched(seed in any::<u64>(), n in 2usize..9, m in 0u64..13) {
        let mut rng = TrialRng::new(seed);
        let g = mixed_graph(&mut rng, n, m);
        prop_assume!(g.m() <= 14);
        let out = color_optimal(&g);
        prop_assert!(verify(&g, out.coloring.colors()).unwrap().valid);
        prop_assert!(out.coloring.is_total());
        let exact = u64::from(exact_chromatic_index(&g, 16).unwrap());
        prop_assert!(lower_bound(&g).k <= exact);
        prop_assert!(exact <= out.colors_used as u64);
        prop_assert!(out.colors_used as u64 <= g.max_degree() + g.mu_max());
        prop_assert_eq!(out.first_class, out.colors_used == out.lower_bound);
    }

    #[test]
    fn second_class_conditions_hold(seed in any::<u64>(), odd in 0usize..2, m in 1u64..9) {
        let n = [3, 5][odd];
        let mut rng = TrialRng::new(seed);
        let g = mixed_graph(&mut rng, n, m);
        let chi = u64::from(exact_chromatic_index(&g, 16).unwrap());
        prop_assume!(chi >= 2);
        prop_assert!(!check_second_class_conditions(&g, chi - 1).unwrap().is_empty());
    }

    #[test]
    fn bounded_instances_are_k_colourable(seed in any::<u64>()) {
        let mut rng = TrialRng::new(seed);
        let (g, k, _) = bounded_instance(&mut rng, 16, 2);
        match alg_c(&g, k).unwrap() {
            AlgCOutput::Colored(c) => {
                prop_assert!(verify(&g, c.colors()).unwrap().valid);
                prop_assert!(c.is_total() && c.colors_used() <= k as usize);
            }
            other => prop_assert!(false, "expected a colouring, got {:?}", other),
        }
    }

    #[test]
    fn decomposition_gives_delta(seed in any::<u64>()) {
        let mut rng = TrialRng::new(seed);
        let g = decomposition_instance(&mut rng, 16);
        prop_assert_eq!(color_optimal(&g).colors_used as u64, g.max_degree());
    }

    #[test]
    fn kempe_switch_is_an_involution(seed in any::<u64>(), n in 2usize..10, m in 1u64..40) {
        let mut rng = TrialRng::new(seed);
        let g = mixed_graph(&mut rng, n, m);
        prop_assume!(g.m() > 0);
        let k = (2 * g.max_degree()) as u32;
        let order = permutation(&mut rng, g.m() as usize);
        let (c, _) = greedy_color(&g, k, &order).unwrap();
        let v = rng.below(n as u64) as usize;
        let a = 1 + rng.below(u64::from(k)) as u32;
        let b = 1 + (a + rng.below(u64::from(k) - 1) as u32) % k;
        let once = c.kempe_switch(v, a, b);
        prop_assert!(verify(&g, once.colors()).unwrap().valid);
        prop_assert_eq!(once.kempe_switch(v, a, b), c);
    }

    #[test]
    fn grown_trees_are_valid_and_maximal(seed in any::<u64>(), n in 3usize..9, m in 5u64..40) {
        let mut rng = TrialRng::new(seed);
        let g = mixed_graph(&mut rng, n, m);
        prop_assume!(g.m() > 0);
        let order = permutation(&mut rng, g.m() as usize);
        let (c, stuck) = greedy_color(&g, g.max_degree() as u32, &order).unwrap();
        if let Some(e0) = stuck {
            let t = grow_tashkinov(&c, e0).unwrap();
            prop_assert_eq!(t.check(&c), Ok(()));
            prop_assert!(t.is_maximal(&c));
            prop_assert_eq!(t.root(), e0);
        }
    }

    #[test]
    fn certificates_are_elementary(seed in any::<u64>(), odd in 0usize..3, m in 4u64..30) {
        let n = [3, 5, 7][odd];
        let mut rng = TrialRng::new(seed);
        let g = mixed_graph(&mut rng, n, m);
        prop_assume!(g.m() > 0);
        let s = g.degree_stats();
        let k = s.max_degree.max(s.d(2) + 2) as u32;
        if let AlgCOutput::Elementary(cert) = alg_c(&g, k).unwrap() {
            prop_assert_eq!(is_elementary(&cert.coloring, &cert.tree.vertices), None);
            prop_assert_eq!(cert.tree.check(&cert.coloring), Ok(()));
            let sub = &cert.subgraph;
            let (x, y) = cert.coloring.endpoints(cert.root);
            if let Some(w) = (0..sub.n()).find(|&v| sub.degree(v) + 1 >= u64::from(k)) {
                prop_assert!(w == x || w == y, "root {}-{} misses high vertex {}", x, y, w);
            }
        }
    }

    #[test]
    fn text_formats_round_trip(seed in any::<u64>(), n in 1usize..10, m in 0u64..30) {
        let mut rng = TrialRng::new(seed);
        let g = if n < 2 { Multigraph::empty(n) } else { mixed_graph(&mut rng, n, m) };
        prop_assert_eq!(Multigraph::from_text(&g.to_text()).unwrap(), g.clone());
        let out = color_optimal(&g);
        let doc = ColoringDocument::from_coloring(&g, &out.coloring, out.strategy.tag(), Some(out.first_class));
        let back = ColoringDocument::from_text(&doc.to_text()).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.assignment_for(&g).unwrap(), out.coloring.colors().to_vec());
    }
}

#[test]
fn one_factorizations_are_disjoint_matchings() {
    for n in 2..=24 {
        let classes = one_factorization(n).unwrap();
        let mut seen = BTreeSet::new();
        for class in &classes {
            let mut touched = BTreeSet::new();
            for &(u, v) in class {
                assert!(u < v && v < n);
                assert!(touched.insert(u) && touched.insert(v), "n={n}: not a matching");
                assert!(seen.insert((u, v)), "n={n}: pair repeated");
            }
        }
        assert_eq!(seen.len(), n * (n - 1) / 2);
    }
}
