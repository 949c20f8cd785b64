use nss3m_core::algebra::{mod_dim, twist_scalar, typical_module, Color, CriticalSet};
use nss3m_core::builders::{ColorSlot, CompSpec, MeridSpec, Plan, SpineSpec};
use nss3m_core::diagram::ComponentKind;
use nss3m_core::engine::{bracket_tangle, EngineConfig};
use nss3m_core::scalar::{C64, RootData};
use nss3m_core::surgery::{degree_lift, kirby_color};
use nss3m_core::builders::Assignment;

fn encircle(root: &RootData, alpha: C64, beta: C64, m_twists: i64) -> C64 {
    let plan = Plan::Spine(SpineSpec {
        stem: CompSpec { name: "u".into(), kind: ComponentKind::Graph, color: ColorSlot::Fixed(Color::Typical(alpha)) },
        stem_twists: 0,
        branches: vec![vec![MeridSpec {
            comp: CompSpec::graph("m", Color::Typical(beta)),
            twists: m_twists,
            chirality: 1,
        }]],
    });
    let d = plan.compile_open(root.r, &Assignment::default(), "u", 0).unwrap();
    bracket_tangle(root, &d, &EngineConfig::default()).unwrap().0
}

fn main() {
    for r in [2u32, 3, 4, 5] {
        let rd = RootData::new(r).unwrap();
        let alpha = C64::new(0.37, 0.0);
        let u = Color::Typical(alpha);
        let g = -degree_lift(&rd, &u);
        let k = kirby_color(&rd, g, CriticalSet::IntegerClasses).unwrap();
        let th_a = twist_scalar(&rd, &typical_module(&rd, alpha).unwrap()).unwrap();
        println!("== r = {r}, deg(merid) = {:.4}", g.re);
        let mut sum = C64::new(0.0, 0.0);
        for (d, beta) in &k.terms {
            let th_b = twist_scalar(&rd, &typical_module(&rd, *beta).unwrap()).unwrap();
            let phi0 = encircle(&rd, alpha, *beta, 0);
            let phi1 = encircle(&rd, alpha, *beta, 1);
            let term = d * phi1;
            sum += term;
            println!("  beta={:+.3}: d={:.4}{:+.4}i  theta_b={:.4}{:+.4}i  phi0={:.4}{:+.4}i phi1={:.4}{:+.4}i term={:.4}{:+.4}i",
                beta.re, d.re, d.im, th_b.re, th_b.im, phi0.re, phi0.im, phi1.re, phi1.im, term.re, term.im);
        }
        println!("  sum(d*phi1) = {:.6}{:+.6}i ; * theta_a = {:.6}{:+.6}i", sum.re, sum.im, (sum*th_a).re, (sum*th_a).im);
    }
}
