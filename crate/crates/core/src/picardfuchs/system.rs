use serde::Serialize;

use super::{weierstrass_invariants, PfError, WeierstrassData, Z};
use crate::exactalg::{
    content_in, exact_divide, gcd, int, rat, squarefree_decomposition, MultiPoly,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Variant {
    /// Elliptic periods ∫dx/y, ∫x dx/y.
    Pf1,
    /// Zero-cycles x1 − x2, x1² − x2² of the cubic cover.
    Pf2,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Pf1 => "pf1",
            Variant::Pf2 => "pf2",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "pf1" => Some(Variant::Pf1),
            "pf2" => Some(Variant::Pf2),
            _ => None,
        }
    }
}

/// `Δ(z) Y' = M(z) Y`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuchsianSystem {
    pub variant: Variant,
    pub prefactor: MultiPoly,
    pub matrix: [[MultiPoly; 2]; 2],
    /// δ, kept to locate the apparent singularity.
    pub delta: MultiPoly,
}

impl FuchsianSystem {
    /// pf1 uses entry (1,2) = +3δ/2: with the opposite sign the exponents at the singular
    /// fibers come out irrational, see [`FuchsianSystem::pf1_as_printed`].
    pub fn new(w: &WeierstrassData, variant: Variant) -> Result<Self, PfError> {
        let (big, small) = weierstrass_invariants(w)?;
        let dp = big.derivative(Z);
        let matrix = match variant {
            Variant::Pf1 => [
                [dp.scale(&rat(-1, 12)), small.scale(&rat(3, 2))],
                [(&w.g2 * &small).scale(&rat(-1, 8)), dp.scale(&rat(1, 12))],
            ],
            Variant::Pf2 => [
                [dp.scale(&rat(1, 6)), small.scale(&int(-3))],
                [(&w.g2 * &small).scale(&rat(-1, 2)), dp.scale(&rat(1, 3))],
            ],
        };
        Ok(FuchsianSystem { variant, prefactor: big, matrix, delta: small })
    }

    /// pf1 with entry (1,2) = −3δ/2.
    pub fn pf1_as_printed(w: &WeierstrassData) -> Result<Self, PfError> {
        let mut sys = Self::new(w, Variant::Pf1)?;
        sys.matrix[0][1] = -&sys.matrix[0][1];
        Ok(sys)
    }

    /// `M − (tr M / 2) I`; a scalar gauge that leaves exponent differences unchanged.
    pub fn trace_free(&self) -> Self {
        let half = (&self.matrix[0][0] + &self.matrix[1][1]).scale(&rat(1, 2));
        let mut out = self.clone();
        out.matrix[0][0] = &self.matrix[0][0] - &half;
        out.matrix[1][1] = &self.matrix[1][1] - &half;
        out
    }
}

/// `p0 η'' + p1 η' + p2 η = 0`, with the loci of the underlying system attached.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalarOde {
    pub p0: MultiPoly,
    pub p1: MultiPoly,
    pub p2: MultiPoly,
    /// Δ: its zeros are the singular fibers.
    pub discriminant: MultiPoly,
    /// δ: zeros not shared with Δ are apparent.
    pub delta: MultiPoly,
}

impl ScalarOde {
    pub fn coefficients(&self) -> [&MultiPoly; 3] {
        [&self.p0, &self.p1, &self.p2]
    }

    /// Whether two operators agree up to a common nonzero constant.
    pub fn equal_up_to_unit(&self, other: &ScalarOde) -> bool {
        let u = MultiPoly::var("__u");
        let pack = |o: &ScalarOde| &(&o.p0 + &(&o.p1 * &u)) + &(&o.p2 * &u.pow(2));
        pack(self).equal_up_to_unit(&pack(other))
    }
}

/// Eliminates η2 from the trace-free form of the system.
pub fn scalar_ode(sys: &FuchsianSystem) -> Result<ScalarOde, PfError> {
    let tf = sys.trace_free();
    let [[m11, m12], [m21, m22]] = &tf.matrix;
    if m12.is_zero() {
        return Err(PfError::CannotEliminate);
    }
    let d = &tf.prefactor;
    let dd = d.derivative(Z);
    let p0 = &(d * d) * m12;
    let p1 = &(&(&(-d) * &(m12 * &(m11 + m22))) - &(&(d * d) * &m12.derivative(Z))) + &(&(d * &dd) * m12);
    let p2 = &(&(&(&(m11 * m22) * m12) + &(&(d * m11) * &m12.derivative(Z)))
        - &(&(d * m12) * &m11.derivative(Z)))
        - &(&(m12 * m12) * m21);
    let ode = ScalarOde { p0, p1, p2, discriminant: d.clone(), delta: sys.delta.clone() };
    Ok(strip_common(ode))
}

/// The closed form `144δΔ² η'' + 144Δ(δΔ' − Δδ') η' + (12δΔΔ'' − 216g2δ³ − 12ΔΔ'δ' − δΔ'²) η`.
pub fn closed_form_ode(w: &WeierstrassData) -> Result<ScalarOde, PfError> {
    let (d, e) = weierstrass_invariants(w)?;
    let d1 = d.derivative(Z);
    let d2 = d1.derivative(Z);
    let e1 = e.derivative(Z);
    let p0 = (&e * &(&d * &d)).scale(&int(144));
    let p1 = (&d * &(&(&e * &d1) - &(&d * &e1))).scale(&int(144));
    let p2 = &(&(&(&(&e * &d) * &d2).scale(&int(12)) - &(&w.g2 * &e.pow(3)).scale(&int(216)))
        - &(&(&d * &d1) * &e1).scale(&int(12)))
        - &(&e * &d1.pow(2));
    Ok(strip_common(ScalarOde { p0, p1, p2, discriminant: d, delta: e }))
}

/// Removes factors common to p0, p1, p2: the parameter content and the factors of Δ and δ.
fn strip_common(mut ode: ScalarOde) -> ScalarOde {
    let c = gcd(&gcd(&content_in(&ode.p0, Z), &content_in(&ode.p1, Z)), &content_in(&ode.p2, Z));
    if !c.is_constant() {
        for p in [&mut ode.p0, &mut ode.p1, &mut ode.p2] {
            *p = exact_divide(p, &c).expect("content divides");
        }
    }
    for f in coprime_base(&[ode.discriminant.clone(), ode.delta.clone()]) {
        loop {
            let qs: Vec<_> = [&ode.p0, &ode.p1, &ode.p2]
                .iter()
                .map(|p| if p.is_zero() { Ok(MultiPoly::zero()) } else { exact_divide(p, &f) })
                .collect();
            if qs.iter().any(|q| q.is_err()) {
                break;
            }
            let mut it = qs.into_iter().map(|q| q.unwrap());
            ode.p0 = it.next().unwrap();
            ode.p1 = it.next().unwrap();
            ode.p2 = it.next().unwrap();
        }
    }
    // common rational content, sign fixed by p0
    let u = MultiPoly::var("__u");
    let packed = &(&ode.p0 + &(&ode.p1 * &u)) + &(&ode.p2 * &u.pow(2));
    let k = packed.content();
    let inv = num_traits::Inv::inv(k);
    let mut out = ScalarOde {
        p0: ode.p0.scale(&inv),
        p1: ode.p1.scale(&inv),
        p2: ode.p2.scale(&inv),
        ..ode
    };
    if out.p0.leading_coefficient() < int(0) {
        out.p0 = -&out.p0;
        out.p1 = -&out.p1;
        out.p2 = -&out.p2;
    }
    out
}

/// Pairwise coprime factors in z whose products give the squarefree parts of the inputs.
pub(crate) fn coprime_base(polys: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut base: Vec<MultiPoly> = Vec::new();
    for p in polys {
        for (f, _) in squarefree_decomposition(p, Z) {
            let mut pending = vec![f];
            while let Some(f) = pending.pop() {
                if f.deg(Z) == 0 {
                    continue;
                }
                let mut merged = false;
                for i in 0..base.len() {
                    let g = gcd(&base[i], &f);
                    if g.deg(Z) > 0 {
                        let b = base.remove(i);
                        pending.push(exact_divide(&b, &g).unwrap().primitive());
                        pending.push(exact_divide(&f, &g).unwrap().primitive());
                        base.push(g);
                        merged = true;
                        break;
                    }
                }
                if !merged {
                    base.push(f.primitive());
                }
            }
        }
    }
    base.retain(|f| f.deg(Z) > 0);
    base.sort();
    base
}
