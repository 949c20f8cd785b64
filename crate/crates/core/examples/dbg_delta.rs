use nss3m_core::algebra::{mod_dim, Color, CriticalSet};
use nss3m_core::builders::{ColorSlot, CompSpec, MeridSpec, Plan, SpineSpec};
use nss3m_core::diagram::ComponentKind;
use nss3m_core::engine::EngineConfig;
use nss3m_core::scalar::{C64, RootData};
use nss3m_core::surgery::{degree_lift, fprime_kirby};

fn sample(root: &RootData, c_lift: f64, sign: i8, deg_sign: f64, chir: i8) -> C64 {
    let u = Color::typical(c_lift);
    let merid_deg = degree_lift(root, &u) * deg_sign;
    let plan = Plan::Spine(SpineSpec {
        stem: CompSpec { name: "u".into(), kind: ComponentKind::Graph, color: ColorSlot::Fixed(u.clone()) },
        stem_twists: sign as i64,
        branches: vec![vec![MeridSpec {
            comp: CompSpec { name: "m".into(), kind: ComponentKind::Surgery { framing: sign as i64 }, color: ColorSlot::Surgery(0) },
            twists: sign as i64,
            chirality: chir,
        }]],
    });
    let v = fprime_kirby(root, &plan, &[merid_deg], CriticalSet::IntegerClasses, "u", &EngineConfig::default()).unwrap();
    v / mod_dim(root, C64::new(c_lift, 0.0)).unwrap()
}

fn main() {
    for r in 2..=4u32 {
        let rd = RootData::new(r).unwrap();
        println!("== r = {r}");
        for (c, tag) in [(0.37, "a"), (3.0/7.0, "b"), (0.5, "c")] {
            for sign in [1i8, -1] {
                for deg_sign in [-1.0, 1.0] {
                    for chir in [1i8, -1] {
                        let v = sample(&rd, c, sign, deg_sign, chir);
                        println!("  c={tag} sign={sign:+} degsign={deg_sign:+} chir={chir:+}: {:.6}+{:.6}i  |{:.6}|", v.re, v.im, v.norm());
                    }
                }
            }
        }
    }
}
