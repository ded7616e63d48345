//! Report builders. Each one runs a computation and records what it found as
//! claims, every claim carrying a certificate that [`crate::report::verify_report`]
//! can re-check without solving anything.

use num_traits::{Signed, Zero};
use rand::Rng;

use crate::certificate::Certificate;
use crate::cone::{dd_h_to_v, dd_v_to_h, dual, proper_reduction, Cone, PolygonCone};
use crate::corpus::{proper_generating, rng_from_seed, square_cone, CorpusEntry};
use crate::error::{Error, Result};
use crate::lorentz::{
    inner_polyhedral_approx, is_psd_2x2, lorentz_retract_maps, random_member,
    rational_boundary_rays, ray_outside_approx, rotation_witness, s2_iso,
};
use crate::lp::{cone_membership, Membership};
use crate::ratlin::{int, RMat, RVec, Rat};
use crate::report::Report;
use crate::retract::{
    all_facet_and_vertex_retracts, three_dim_retract_scan, verify_retraction, Retraction,
    RetractionCheck,
};
use crate::sep::{
    check_min_equals_max_equivalences, factor_through_simplex, is_positive_map, is_separable,
    trace_program, SeparabilityVerdict,
};
use crate::tensorcone::{
    injective_cone, injective_inequalities, min_equals_max_from, obstruction_3x3_from,
    projective_cone, projective_generators, tensor_vec, MinMaxVerdict,
};

// ---------------------------------------------------------------------------
// certificate builders

fn rows(dim: usize, vs: &[RVec]) -> RMat {
    if vs.is_empty() {
        RMat::zeros(0, dim)
    } else {
        RMat::from_rows(dim, vs).expect("dims")
    }
}

/// Membership certificate, or `None` if the point is outside.
pub fn membership_certificate(point: &RVec, generators: &[RVec]) -> Option<Certificate> {
    match cone_membership(point, generators).ok()? {
        Membership::Inside(coefficients) => Some(Certificate::Membership {
            point: point.clone(),
            generators: generators.to_vec(),
            coefficients,
        }),
        Membership::Outside(_) => None,
    }
}

fn coefficients(point: &RVec, generators: &[RVec]) -> Option<RVec> {
    if generators.is_empty() {
        return point.is_zero().then(|| RVec::zeros(0));
    }
    match cone_membership(point, generators).ok()? {
        Membership::Inside(c) => Some(c),
        Membership::Outside(_) => None,
    }
}

/// Mutual-membership certificate for `cone(left) = cone(right)`.
pub fn cone_equality_certificate(left: &[RVec], right: &[RVec]) -> Option<Certificate> {
    let left_in_right = left
        .iter()
        .map(|x| coefficients(x, right))
        .collect::<Option<Vec<_>>>()?;
    let right_in_left = right
        .iter()
        .map(|x| coefficients(x, left))
        .collect::<Option<Vec<_>>>()?;
    Some(Certificate::ConeEquality {
        left: left.to_vec(),
        right: right.to_vec(),
        left_in_right,
        right_in_left,
    })
}

/// Every listed ray of a pointed cone is extreme.
pub fn extreme_rays_certificate(c: &Cone) -> Certificate {
    let inequalities = c.inequalities();
    Certificate::all(
        c.extremal_rays()
            .iter()
            .map(|r| Certificate::ExtremeRay {
                dim: c.dim(),
                inequalities: inequalities.clone(),
                ray: r.clone(),
                positive: r.clone(),
            })
            .collect(),
    )
}

/// Every listed facet of a generating cone is a facet.
pub fn facets_certificate(c: &Cone) -> Certificate {
    let generators = c.generators();
    Certificate::all(
        c.facets()
            .iter()
            .map(|f| Certificate::Facet {
                dim: c.dim(),
                generators: generators.clone(),
                functional: f.clone(),
            })
            .collect(),
    )
}

fn lineality_certificate(c: &Cone) -> Option<Certificate> {
    let l = c.lineality_basis().first()?;
    let generators = c.generators();
    Some(Certificate::LinealityVector {
        vector: l.clone(),
        plus: coefficients(l, &generators)?,
        minus: coefficients(&l.neg(), &generators)?,
        generators,
    })
}

fn orthogonal_certificate(c: &Cone) -> Option<Certificate> {
    Some(Certificate::Orthogonal {
        vector: c.span_perp().first()?.clone(),
        generators: c.generators(),
    })
}

/// Proof that `c` is, or is not, a simplex cone.
pub fn simplex_certificate(c: &Cone) -> Option<Certificate> {
    if c.is_simplex() {
        let basis = c.extremal_rays().to_vec();
        let generators = c.generators();
        let coefficients = generators
            .iter()
            .map(|g| coefficients(g, &basis))
            .collect::<Option<Vec<_>>>()?;
        return Some(Certificate::SimplexBasis {
            dim: c.dim(),
            basis,
            generators,
            coefficients,
        });
    }
    if !c.is_proper() {
        return lineality_certificate(c);
    }
    if !c.is_generating() {
        return orthogonal_certificate(c);
    }
    let positive = c.strictly_positive_functional().ok()?;
    Some(Certificate::NotSimplex {
        dim: c.dim(),
        inequalities: c.inequalities(),
        rays: c.extremal_rays().to_vec(),
        positive,
    })
}

/// Certificate for a [`MinMaxVerdict`]. `Differs` is fully self-contained;
/// `Equal` shows every facet of the projective cone is a combination of
/// product functionals, which is complete given the facet list.
pub fn verdict_certificate(
    e: &Cone,
    f: &Cone,
    verdict: &MinMaxVerdict,
    min_cone: Option<&Cone>,
) -> Option<Certificate> {
    let functionals = injective_inequalities(e, f);
    match verdict {
        MinMaxVerdict::Differs { witness, separator } => {
            let w = witness.to_vec();
            Some(Certificate::all(vec![
                Certificate::Separation {
                    point: w.clone(),
                    generators: projective_generators(e, f),
                    separator: separator.to_vec(),
                },
                Certificate::ValidInequalities {
                    generators: vec![w],
                    inequalities: functionals,
                },
            ]))
        }
        MinMaxVerdict::Equal => {
            let owned;
            let min_cone = match min_cone {
                Some(c) => c,
                None => {
                    owned = projective_cone(e, f);
                    &owned
                }
            };
            let facets = min_cone.inequalities();
            let mut parts = vec![Certificate::ValidInequalities {
                generators: projective_generators(e, f),
                inequalities: facets.clone(),
            }];
            for phi in &facets {
                parts.push(membership_certificate(phi, &functionals)?);
            }
            Some(Certificate::all(parts))
        }
    }
}

fn separability_certificate(t: &RMat, e: &Cone, f: &Cone, v: &SeparabilityVerdict) -> Certificate {
    match v {
        SeparabilityVerdict::Separable { terms } => {
            let functionals: Vec<RVec> = terms.iter().map(|s| s.functional.clone()).collect();
            let vectors: Vec<RVec> = terms.iter().map(|s| s.vector.clone()).collect();
            Certificate::all(vec![
                Certificate::SumOfRankOne {
                    target: t.clone(),
                    functionals: functionals.clone(),
                    vectors: vectors.clone(),
                    coefficients: terms.iter().map(|s| s.coefficient.clone()).collect(),
                },
                Certificate::ValidInequalities {
                    generators: e.generators(),
                    inequalities: functionals,
                },
                Certificate::ValidInequalities {
                    generators: vectors,
                    inequalities: f.inequalities(),
                },
            ])
        }
        SeparabilityVerdict::Entangled { witness } => {
            let mut products = Vec::new();
            for phi in e.inequalities() {
                for y in f.generators() {
                    products.push(tensor_vec(&phi, &y));
                }
            }
            Certificate::all(vec![
                Certificate::NegativePairing {
                    left: witness.matrix.clone(),
                    right: t.transpose(),
                },
                Certificate::ValidInequalities {
                    generators: products,
                    inequalities: vec![witness.to_vec()],
                },
            ])
        }
    }
}

fn positive_map_certificate(t: &RMat, e: &Cone, f: &Cone) -> Certificate {
    Certificate::PositiveMap {
        map: t.clone(),
        domain_generators: e.generators(),
        codomain_inequalities: f.inequalities(),
    }
}

/// `S T = id` and positivity of `T`, `S` and the dual pair.
pub fn retraction_certificate(r: &Retraction) -> Certificate {
    let (ambient_gens, ambient_ineqs) = (r.ambient.generators(), r.ambient.inequalities());
    let (sub_gens, sub_ineqs) = (r.sub.generators(), r.sub.inequalities());
    Certificate::all(vec![
        Certificate::MatrixProduct {
            left: r.s.clone(),
            right: r.t.clone(),
            product: RMat::identity(r.sub.dim()),
        },
        Certificate::PositiveMap {
            map: r.t.clone(),
            domain_generators: sub_gens.clone(),
            codomain_inequalities: ambient_ineqs.clone(),
        },
        Certificate::PositiveMap {
            map: r.s.clone(),
            domain_generators: ambient_gens.clone(),
            codomain_inequalities: sub_ineqs.clone(),
        },
        Certificate::PositiveMap {
            map: r.s.transpose(),
            domain_generators: sub_ineqs,
            codomain_inequalities: ambient_gens,
        },
        Certificate::PositiveMap {
            map: r.t.transpose(),
            domain_generators: ambient_ineqs,
            codomain_inequalities: sub_gens,
        },
    ])
}

fn fmt_list(vs: &[RVec]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

// ---------------------------------------------------------------------------
// single-instance reports

pub fn analyze_report(c: &Cone, name: &str) -> Report {
    let mut r = Report::new("analyze");
    r.instance(format!("{name}: dim {}", c.dim()));
    let gens = c.generators();
    let ineqs = c.inequalities();
    r.check(
        "representation",
        "every inequality is valid on every generator",
        true,
        Some(Certificate::ValidInequalities {
            generators: gens.clone(),
            inequalities: ineqs.clone(),
        }),
    )
    .value("dim", c.dim())
    .value("span_dim", c.span_dim())
    .value("lineality_dim", c.lineality_basis().len());

    if c.is_proper() {
        r.check(
            "extremal-rays",
            "each listed ray is extreme",
            true,
            Some(extreme_rays_certificate(c)),
        )
        .value("count", c.extremal_rays().len())
        .value("rays", fmt_list(c.extremal_rays()));
        r.check(
            "proper",
            "the cone is proper (pointed)",
            true,
            Some(Certificate::StrictlyPositive {
                functional: c
                    .strictly_positive_functional()
                    .unwrap_or_else(|_| RVec::zeros(c.dim())),
                vectors: c.extremal_rays().to_vec(),
            }),
        );
    } else {
        r.check(
            "proper",
            "the cone is not proper: it contains a line",
            true,
            lineality_certificate(c),
        )
        .value("lineality", fmt_list(c.lineality_basis()));
    }

    if c.is_generating() {
        r.check(
            "facets",
            "each listed inequality is a facet",
            true,
            Some(facets_certificate(c)),
        )
        .value("count", c.facets().len())
        .value("facets", fmt_list(c.facets()));
        r.check(
            "generating",
            "the cone spans the ambient space",
            true,
            Some(Certificate::Rank {
                matrix: rows(c.dim(), &gens),
                rank: c.dim(),
            }),
        );
    } else {
        r.check(
            "generating",
            "the cone is not generating: a nonzero vector is orthogonal to it",
            true,
            orthogonal_certificate(c),
        )
        .value("span_complement", fmt_list(c.span_perp()));
    }

    let simplex = c.is_simplex();
    r.check(
        "simplex",
        if simplex {
            "the cone is a simplex cone"
        } else {
            "the cone is not a simplex cone"
        },
        true,
        simplex_certificate(c),
    )
    .value("simplex", simplex);

    let partial = c.is_partial_simplex();
    let partial_cert = if c.is_proper() {
        Some(Certificate::Rank {
            matrix: rows(c.dim(), c.extremal_rays()),
            rank: rows(c.dim(), c.extremal_rays()).rank(),
        })
    } else {
        lineality_certificate(c)
    };
    r.check(
        "partial-simplex",
        if partial {
            "the extremal rays are linearly independent"
        } else {
            "the cone is not generated by independent vectors"
        },
        true,
        partial_cert,
    )
    .value("partial_simplex", partial);

    if c.is_proper() && c.is_generating() {
        let f = c.strictly_positive_functional().expect("proper generating");
        r.check(
            "strictly-positive-functional",
            "a functional strictly positive on every extremal ray",
            true,
            Some(Certificate::StrictlyPositive {
                functional: f.clone(),
                vectors: c.extremal_rays().to_vec(),
            }),
        )
        .value("functional", &f);
    } else {
        r.skip(
            "strictly-positive-functional",
            "only defined for proper generating cones",
        );
    }
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorKind {
    Min,
    Max,
}

/// The projective or injective product, with a report on its description.
pub fn tensor_report(kind: TensorKind, e: &Cone, f: &Cone) -> (Cone, Report) {
    let (cone, name) = match kind {
        TensorKind::Min => (projective_cone(e, f), "min"),
        TensorKind::Max => (injective_cone(e, f), "max"),
    };
    let mut r = Report::new(format!("tensor {name}"));
    r.instance(format!("E: dim {}", e.dim()));
    r.instance(format!("F: dim {}", f.dim()));
    match kind {
        TensorKind::Min => {
            r.check(
                "description",
                "every facet is valid on every product of generators",
                true,
                Some(Certificate::ValidInequalities {
                    generators: projective_generators(e, f),
                    inequalities: cone.inequalities(),
                }),
            )
            .value("dim", cone.dim())
            .value("facets", cone.facets().len());
        }
        TensorKind::Max => {
            r.check(
                "description",
                "every product functional is valid on every generator",
                true,
                Some(Certificate::ValidInequalities {
                    generators: cone.generators(),
                    inequalities: injective_inequalities(e, f),
                }),
            )
            .value("dim", cone.dim())
            .value("inequalities", cone.facets().len());
        }
    }
    if cone.is_proper() {
        r.check(
            "extremal-rays",
            "each listed ray is extreme",
            true,
            Some(extreme_rays_certificate(&cone)),
        )
        .value("count", cone.extremal_rays().len());
    }
    if cone.is_generating() {
        r.check(
            "facets",
            "each listed inequality is a facet",
            true,
            Some(facets_certificate(&cone)),
        )
        .value("count", cone.facets().len());
    }
    (cone, r)
}

pub fn min_eq_max_report(e: &Cone, f: &Cone) -> Report {
    let mut r = Report::new("check min-eq-max");
    r.instance(format!("E: dim {}", e.dim()));
    r.instance(format!("F: dim {}", f.dim()));
    let min_cone = projective_cone(e, f);
    let verdict = min_equals_max_from(e, f, &min_cone);
    push_verdict(&mut r, "min-eq-max", e, f, &verdict, Some(&min_cone));
    r
}

fn push_verdict(
    r: &mut Report,
    id: &str,
    e: &Cone,
    f: &Cone,
    verdict: &MinMaxVerdict,
    min_cone: Option<&Cone>,
) {
    let cert = verdict_certificate(e, f, verdict, min_cone);
    match verdict {
        MinMaxVerdict::Equal => {
            r.check(
                id,
                "the projective and injective products are equal",
                true,
                cert,
            )
            .value("verdict", "equal");
        }
        MinMaxVerdict::Differs { witness, .. } => {
            r.check(
                id,
                "the projective and injective products differ",
                true,
                cert,
            )
            .value("verdict", "differs")
            .value("witness_rank", witness.rank());
        }
    }
}

pub fn duality_report(e: &Cone, f: &Cone) -> Report {
    let mut r = Report::new("check duality");
    r.instance(format!("E: dim {}", e.dim()));
    r.instance(format!("F: dim {}", f.dim()));
    let (de, df) = (dual(e), dual(f));
    let min = projective_cone(e, f);
    let max = injective_cone(e, f);
    let pairs = [
        (
            "dual-of-min",
            "dual(E min F) = dual(E) max dual(F)",
            dual(&min),
            injective_cone(&de, &df),
        ),
        (
            "dual-of-max",
            "dual(E max F) = dual(E) min dual(F)",
            dual(&max),
            projective_cone(&de, &df),
        ),
        (
            "double-dual",
            "dual(dual(E min F)) = E min F",
            dual(&dual(&min)),
            min.clone(),
        ),
    ];
    for (id, statement, left, right) in pairs {
        let cert = cone_equality_certificate(&left.generators(), &right.generators());
        r.check(id, statement, cert.is_some(), cert);
    }
    r
}

/// Conditions (i) simplex, (ii) separable identity, (iii) nonnegative
/// minimal trace and (vi) `dual(E) min E = dual(E) max E`, with certificates.
pub fn thm_min_equals_max_report(e: &Cone, name: &str) -> Result<Report> {
    let eq = check_min_equals_max_equivalences(e)?;
    let mut r = Report::new("check thm-min-equals-max");
    r.instance(format!("{name}: dim {}", e.dim()));
    let yes_no = |b: bool| if b { "true" } else { "false" };
    let [i, ii, iii, vi] = eq.conditions();

    let c_i = simplex_certificate(e);
    r.check(
        "simplex",
        "(i) the cone is a simplex cone",
        true,
        c_i.clone(),
    )
    .value("holds", yes_no(i));

    let id = RMat::identity(e.dim());
    let c_ii = separability_certificate(&id, e, e, &eq.identity);
    r.check(
        "identity-separable",
        "(ii) the identity map is separable",
        true,
        Some(c_ii.clone()),
    )
    .value("holds", yes_no(ii));

    let lp = trace_program(e)?;
    let mt = &eq.min_trace;
    let c_iii = Certificate::all(vec![
        Certificate::LpOptimal {
            a: lp.a,
            b: lp.b,
            c: lp.c,
            value: mt.value.clone(),
            point: mt.point.clone(),
            dual: mt.dual.clone(),
        },
        Certificate::Trace {
            matrix: mt.argmin.clone(),
            value: mt.value.clone(),
        },
        positive_map_certificate(&mt.argmin, e, e),
    ]);
    r.check(
        "nonnegative-trace",
        "(iii) every normalized positive map has nonnegative trace",
        true,
        Some(c_iii.clone()),
    )
    .value("holds", yes_no(iii))
    .value("min_trace", &mt.value);

    if mt.value.is_negative() {
        let scaled = mt.argmin.scale(&(-mt.value.recip()));
        r.check(
            "negative-trace-map",
            "a positive map with trace -1",
            true,
            Some(Certificate::all(vec![
                positive_map_certificate(&scaled, e, e),
                Certificate::Trace {
                    matrix: scaled.clone(),
                    value: int(-1),
                },
            ])),
        )
        .value("map", &scaled);
    }

    let de = dual(e);
    let min_cone = if vi {
        Some(projective_cone(&de, e))
    } else {
        None
    };
    let c_vi = verdict_certificate(&de, e, &eq.min_eq_max, min_cone.as_ref());
    r.check(
        "min-eq-max",
        "(vi) dual(E) min E = dual(E) max E",
        true,
        c_vi.clone(),
    )
    .value("holds", yes_no(vi));

    let all_parts: Option<Vec<Certificate>> =
        [c_i, Some(c_ii), Some(c_iii), c_vi].into_iter().collect();
    r.check(
        "agree",
        "the four conditions agree",
        eq.agree(),
        all_parts.map(Certificate::all),
    )
    .value("verdict", yes_no(i));
    Ok(r)
}

/// Rotation by 180 degrees is positive on the square cone with trace -1.
pub fn square_rotation_report() -> Report {
    let mut r = Report::new("square rotation");
    let square = square_cone().cone;
    r.instance("square cone over (+-1, +-1)");
    let rot = rotation_witness();
    let positive = is_positive_map(&rot, &square, &square).unwrap_or(false);
    r.check(
        "rotation",
        "diag(-1, -1, 1) is positive on the square cone with trace -1",
        positive && rot.trace() == int(-1),
        Some(Certificate::all(vec![
            positive_map_certificate(&rot, &square, &square),
            Certificate::Trace {
                matrix: rot,
                value: int(-1),
            },
        ])),
    );
    r
}

/// The face `C = F_{1,1} & F_{1,2} & F_{3,3} & F_{3,4}` of `E min F` and
/// the non-product facet it forces.
pub fn thm_3x3_report(e: &PolygonCone, f: &PolygonCone) -> Result<Report> {
    let (m, n) = (e.len(), f.len());
    let mut r = Report::new("check thm-3x3");
    r.instance(format!("E: polygon cone with {m} rays"));
    r.instance(format!("F: polygon cone with {n} rays"));
    let min_cone = projective_cone(&e.cone, &f.cone);
    let ob = obstruction_3x3_from(e, f, &min_cone)?;

    // product rays in (i, j) order, 1-based in claims
    let mut products = Vec::new();
    for i in 0..m {
        for j in 0..n {
            products.push(tensor_vec(e.ray(i), f.ray(j)));
        }
    }
    let facets = min_cone.inequalities();
    let ray_certs: Vec<Certificate> = products
        .iter()
        .map(|p| Certificate::ExtremeRay {
            dim: 9,
            inequalities: facets.clone(),
            ray: p.clone(),
            positive: p.clone(),
        })
        .collect();
    r.check(
        "rays",
        "E min F has exactly m n extremal rays, the products of rays",
        min_cone.extremal_rays().len() == m * n,
        Some(Certificate::all(ray_certs)),
    )
    .value("count", min_cone.extremal_rays().len())
    .value("expected", m * n);

    let product_functional = |k: usize, l: usize| tensor_vec(e.facet(k - 1), f.facet(l - 1));
    let mut candidates = Vec::new();
    for k in 1..=m {
        for l in 1..=n {
            let phi = product_functional(k, l);
            let tight: Vec<usize> = products
                .iter()
                .enumerate()
                .filter(|(_, p)| phi.dot(p).is_zero())
                .map(|(idx, _)| idx)
                .collect();
            r.check(
                format!("F{k},{l}"),
                format!("F_{{{k},{l}}} contains 2m + 2n - 4 extremal rays"),
                tight.len() == 2 * m + 2 * n - 4,
                Some(Certificate::FaceIncidence {
                    functional: phi.clone(),
                    generators: products.clone(),
                    tight: tight.clone(),
                }),
            )
            .value("tight", tight.len());
            candidates.push(phi);
        }
    }

    let defining: Vec<RVec> = ob
        .defining
        .iter()
        .map(|&(k, l)| product_functional(k, l))
        .collect();
    let common: Vec<usize> = ob
        .tight_rays
        .iter()
        .map(|&(i, j)| (i - 1) * n + (j - 1))
        .collect();
    r.check(
        "C-rays",
        "C = F11 & F12 & F33 & F34 contains exactly 4 extremal rays",
        ob.tight_rays.len() == 4,
        Some(Certificate::CommonZeros {
            functionals: defining,
            generators: products.clone(),
            common: common.clone(),
        }),
    )
    .value("count", ob.tight_rays.len());

    let c_points: Vec<RVec> = common.iter().map(|&idx| products[idx].clone()).collect();
    let containing: Vec<usize> = ob
        .containing_product_facets
        .iter()
        .map(|&(k, l)| (k - 1) * n + (l - 1))
        .collect();
    r.check(
        "C-product-facets",
        "exactly 4 facets of the form F_{k,l} contain C",
        containing.len() == 4,
        Some(Certificate::ContainingFunctionals {
            candidates,
            points: c_points.clone(),
            containing,
        }),
    )
    .value("count", ob.containing_product_facets.len());

    let above: Vec<usize> = facets
        .iter()
        .enumerate()
        .filter(|(_, phi)| c_points.iter().all(|p| phi.dot(p).is_zero()))
        .map(|(idx, _)| idx)
        .collect();
    r.check(
        "C-facets",
        "at least 9 - dim(C) facets contain C",
        above.len() + ob.face_dim >= 9,
        Some(Certificate::all(vec![
            Certificate::Rank {
                matrix: rows(9, &c_points),
                rank: ob.face_dim,
            },
            Certificate::ContainingFunctionals {
                candidates: facets.clone(),
                points: c_points,
                containing: above.clone(),
            },
        ])),
    )
    .value("face_dim", ob.face_dim)
    .value("containing_facets", above.len());

    r.check(
        "extremal-functional",
        "a facet of E min F above C has rank at least 2",
        ob.functional_rank >= 2,
        Some(Certificate::all(vec![
            Certificate::Facet {
                dim: 9,
                generators: min_cone.generators(),
                functional: ob.extremal_functional.to_vec(),
            },
            Certificate::Rank {
                matrix: ob.extremal_functional.matrix.clone(),
                rank: ob.functional_rank,
            },
        ])),
    )
    .value("rank", ob.functional_rank)
    .value("functional", &ob.extremal_functional.matrix);

    let verdict = min_equals_max_from(&e.cone, &f.cone, &min_cone);
    let cert = verdict_certificate(&e.cone, &f.cone, &verdict, Some(&min_cone));
    r.check(
        "differs",
        "E min F and E max F differ",
        !verdict.is_equal(),
        cert,
    );
    Ok(r)
}

/// `dual(E) min F = dual(E) max F` for a non-simplex `E` and a partial simplex
/// `F`, and `pred(F)` is a simplex cone.
pub fn aubrun_report(e: &Cone, f: &Cone) -> Result<Report> {
    let mut r = Report::new("check aubrun-example");
    r.instance(format!(
        "E: dim {}, {} rays",
        e.dim(),
        e.extremal_rays().len()
    ));
    r.instance(format!(
        "F: dim {}, {} rays",
        f.dim(),
        f.extremal_rays().len()
    ));
    let de = dual(e);
    let min_cone = projective_cone(&de, f);
    let verdict = min_equals_max_from(&de, f, &min_cone);
    let cert = verdict_certificate(&de, f, &verdict, Some(&min_cone));
    r.check(
        "min-eq-max",
        "dual(E) min F = dual(E) max F",
        verdict.is_equal(),
        cert,
    );

    let pf = proper_reduction(f);
    let pe = proper_reduction(e);
    let round_trip = Certificate::MatrixProduct {
        left: pf.push.clone(),
        right: pf.pull.clone(),
        product: RMat::identity(pf.reduced.dim()),
    };
    let f_simplex = simplex_certificate(&pf.reduced);
    r.check(
        "pred-F-simplex",
        "pred(F) is a simplex cone",
        pf.reduced.is_simplex(),
        f_simplex.map(|c| Certificate::all(vec![round_trip, c])),
    )
    .value("dim", pf.reduced.dim());
    r.check(
        "pred-E",
        if pe.reduced.is_simplex() {
            "pred(E) is a simplex cone"
        } else {
            "pred(E) is not a simplex cone"
        },
        true,
        simplex_certificate(&pe.reduced),
    );
    Ok(r)
}

/// Separability of `T: E -> F`, with the factorization through an orthant.
pub fn separable_report(t: &RMat, e: &Cone, f: &Cone) -> Result<Report> {
    let mut r = Report::new("separable");
    r.instance(format!("E: dim {}", e.dim()));
    r.instance(format!("F: dim {}", f.dim()));
    if !is_positive_map(t, e, f)? {
        return Err(Error::NotPositive);
    }
    r.check(
        "positive",
        "the map is positive",
        true,
        Some(positive_map_certificate(t, e, f)),
    );
    let v = is_separable(t, e, f)?;
    let cert = separability_certificate(t, e, f, &v);
    match &v {
        SeparabilityVerdict::Separable { terms } => {
            r.check("separable", "the map is separable", true, Some(cert))
                .value("terms", terms.len());
            let fac = factor_through_simplex(&v, t)?;
            let orthant = Cone::orthant(fac.n);
            r.check(
                "factorization",
                "T = S R with R: E -> R^n and S: R^n -> F positive, n <= dim E dim F",
                fac.n <= e.dim() * f.dim(),
                Some(Certificate::all(vec![
                    Certificate::MatrixProduct {
                        left: fac.s.clone(),
                        right: fac.r.clone(),
                        product: t.clone(),
                    },
                    positive_map_certificate(&fac.r, e, &orthant),
                    positive_map_certificate(&fac.s, &orthant, f),
                ])),
            )
            .value("n", fac.n)
            .value("R", &fac.r)
            .value("S", &fac.s);
        }
        SeparabilityVerdict::Entangled { witness } => {
            r.check("separable", "the map is not separable", true, Some(cert))
                .value("witness", &witness.matrix);
        }
    }
    Ok(r)
}

pub fn push_retraction(r: &mut Report, id: &str, statement: &str, ret: &Retraction) {
    let check = verify_retraction(ret);
    let claim = r.check(
        id,
        statement,
        check.is_valid(),
        Some(retraction_certificate(ret)),
    );
    claim.value("sub_dim", ret.sub.dim());
    if let RetractionCheck::Invalid(why) = check {
        claim.value("reason", why);
    }
}

/// Result of the 3-dimensional retract scan, certified either way.
pub fn scan_report(c: &Cone, name: &str) -> Result<(Option<Retraction>, Report)> {
    let mut r = Report::new("retract scan3");
    r.instance(format!("{name}: dim {}", c.dim()));
    let found = three_dim_retract_scan(c)?;
    match &found {
        Some(ret) => {
            let check = verify_retraction(ret);
            let sub_cert = simplex_certificate(&ret.sub);
            r.check(
                "scan3",
                "a non-simplex 3-dimensional retract exists",
                check.is_valid() && ret.sub.dim() == 3 && !ret.sub.is_simplex(),
                sub_cert.map(|s| Certificate::all(vec![retraction_certificate(ret), s])),
            )
            .value("rays", ret.sub.extremal_rays().len());
        }
        None => {
            r.check(
                "scan3",
                "no non-simplex 3-dimensional retract: the cone is a simplex cone",
                c.is_simplex(),
                simplex_certificate(c),
            );
        }
    }
    Ok((found, r))
}

// ---------------------------------------------------------------------------
// corpus suites

/// Double description round trips and double duals over the corpus.
pub fn dd_duality_suite(corpus: &[CorpusEntry]) -> Report {
    let mut r = Report::new("suite dd-duality");
    for entry in corpus {
        let c = &entry.cone;
        r.instance(format!("{}: dim {}", entry.name, c.dim()));
        let h = dd_v_to_h(c.v_rep());
        let v = dd_h_to_v(&h);
        let back = Cone::from_v(v.clone()).expect("dims");
        let cert = cone_equality_certificate(&c.generators(), &back.generators()).map(|eq| {
            Certificate::all(vec![
                eq,
                Certificate::ValidInequalities {
                    generators: c.generators(),
                    inequalities: h.inequalities.clone(),
                },
            ])
        });
        r.check(
            format!("{}/round-trip", entry.name),
            "V -> H -> V returns the same cone",
            cert.is_some(),
            cert,
        );
        let dd = dual(&dual(c));
        let cert = cone_equality_certificate(&c.generators(), &dd.generators());
        r.check(
            format!("{}/double-dual", entry.name),
            "dual(dual(K)) = K",
            cert.is_some(),
            cert,
        );
    }
    r
}

pub fn min_equals_max_suite(corpus: &[CorpusEntry]) -> Result<Report> {
    let mut r = Report::new("suite thm-min-equals-max");
    for entry in proper_generating(corpus) {
        let sub = thm_min_equals_max_report(&entry.cone, &entry.name)?;
        r.absorb(&entry.name, sub);
    }
    r.absorb("square", square_rotation_report());
    Ok(r)
}

fn random_small<R: Rng>(rng: &mut R) -> Rat {
    Rat::new(rng.gen_range(0..=6).into(), rng.gen_range(1..=3).into())
}

/// A random positive map `F -> E` into a simplex cone: each row of the
/// coordinate matrix (in the basis of extremal rays of `E`) is a random
/// nonnegative combination of facets of `F`.
fn random_map_into_simplex<R: Rng>(rng: &mut R, f: &Cone, e: &Cone) -> RMat {
    let ineqs = f.inequalities();
    let basis = e.extremal_rays();
    let mut t = RMat::zeros(e.dim(), f.dim());
    for b in basis {
        let mut row = RVec::zeros(f.dim());
        for phi in &ineqs {
            if rng.gen_bool(0.5) {
                row = row.axpy(&random_small(rng), phi);
            }
        }
        t = t.add(&RMat::outer(b, &row)).expect("dims");
    }
    t
}

/// Simplex cones absorb: `E min F = E max F` for a simplex `E`, and every
/// positive map `F -> E` is separable.
pub fn simplex_absorption_suite(
    corpus: &[CorpusEntry],
    simplex: &Cone,
    maps_per_cone: usize,
    seed: u64,
) -> Result<Report> {
    if !simplex.is_simplex() {
        return Err(Error::PreconditionViolated(
            "E must be a simplex cone".into(),
        ));
    }
    let mut rng = rng_from_seed(seed);
    let mut r = Report::new("suite simplex-absorption");
    r.instance(format!("E: simplex cone of dim {}", simplex.dim()));
    for entry in corpus {
        let f = &entry.cone;
        r.instance(format!("{}: dim {}", entry.name, f.dim()));
        let min_cone = projective_cone(simplex, f);
        let verdict = min_equals_max_from(simplex, f, &min_cone);
        let cert = verdict_certificate(simplex, f, &verdict, Some(&min_cone));
        r.check(
            format!("{}/min-eq-max", entry.name),
            "E min F = E max F",
            verdict.is_equal(),
            cert,
        );
        let mut parts = Vec::new();
        let mut max_terms = 0;
        let mut all_separable = true;
        for _ in 0..maps_per_cone {
            let t = random_map_into_simplex(&mut rng, f, simplex);
            let v = is_separable(&t, f, simplex)?;
            if let SeparabilityVerdict::Separable { terms } = &v {
                max_terms = max_terms.max(terms.len());
            } else {
                all_separable = false;
            }
            parts.push(separability_certificate(&t, f, simplex, &v));
        }
        r.check(
            format!("{}/maps-separable", entry.name),
            "random positive maps F -> E are separable with at most dim E dim F terms",
            all_separable && max_terms <= simplex.dim() * f.dim(),
            Some(Certificate::all(parts)),
        )
        .value("maps", maps_per_cone)
        .value("max_terms", max_terms);
    }
    Ok(r)
}

/// Facet and vertex-figure retracts of every proper generating corpus cone,
/// the proper reduction of the others, and the 3-dimensional scan.
pub fn retract_suite(corpus: &[CorpusEntry]) -> Result<Report> {
    let mut r = Report::new("suite retracts");
    for entry in corpus {
        let c = &entry.cone;
        r.instance(format!("{}: dim {}", entry.name, c.dim()));
        let target = if c.is_proper() && c.is_generating() {
            c.clone()
        } else {
            let pr = proper_reduction(c);
            if pr.reduced.dim() == 0 {
                // a row-list matrix with no rows cannot carry its column count
                r.skip(
                    format!("{}/proper-reduction", entry.name),
                    "the proper reduction is the zero space",
                );
                continue;
            }
            let ret = Retraction {
                ambient: c.clone(),
                sub: pr.reduced.clone(),
                t: pr.pull,
                s: pr.push,
            };
            push_retraction(
                &mut r,
                &format!("{}/proper-reduction", entry.name),
                "the proper reduction is a retract",
                &ret,
            );
            pr.reduced
        };
        if target.dim() >= 2 {
            let nf = target.facets().len();
            for (i, ret) in all_facet_and_vertex_retracts(&target)?.iter().enumerate() {
                let (id, statement) = if i < nf {
                    (
                        format!("{}/facet-{i}", entry.name),
                        "facet retract is valid",
                    )
                } else {
                    (
                        format!("{}/vertex-figure-{}", entry.name, i - nf),
                        "vertex figure retract is valid",
                    )
                };
                push_retraction(&mut r, &id, statement, ret);
            }
        }
        let (_, scan) = scan_report(&target, &entry.name)?;
        r.absorb(
            &entry.name,
            Report {
                instances: Vec::new(),
                ..scan
            },
        );
    }
    Ok(r)
}

fn random_symmetric<R: Rng>(rng: &mut R) -> (Rat, Rat, Rat) {
    let mut q = || Rat::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=4).into());
    (q(), q(), q())
}

/// Rotation witness, the PSD isomorphism, padding retracts and inner
/// polyhedral approximations of the Lorentz cone.
pub fn lorentz_report(seed: u64, samples: usize) -> Result<Report> {
    let mut rng = rng_from_seed(seed);
    let mut r = Report::new("suite lorentz");
    r.instance(format!("seed {seed}, {samples} samples"));
    let w = rotation_witness();
    r.check(
        "rotation",
        "diag(-1, -1, 1) preserves the Lorentz form and has trace -1",
        true,
        Some(Certificate::all(vec![
            Certificate::LorentzForm { map: w.clone() },
            Certificate::Trace {
                matrix: w.clone(),
                value: int(-1),
            },
            Certificate::LorentzImages {
                map: w.clone(),
                points: rational_boundary_rays(32),
            },
        ])),
    );

    let mut parts = Vec::new();
    let mut psd_count = 0;
    for _ in 0..samples {
        let (a, b, c) = random_symmetric(&mut rng);
        let psd = is_psd_2x2(&a, &b, &c);
        psd_count += usize::from(psd);
        parts.push(Certificate::LorentzPsd {
            image: s2_iso(&a, &b, &c),
            a,
            b,
            c,
            psd,
        });
    }
    r.check(
        "s2-iso",
        "a 2x2 symmetric matrix is PSD exactly when its image lies in L3",
        true,
        Some(Certificate::all(parts)),
    )
    .value("samples", samples)
    .value("psd", psd_count);

    for (n, m) in [(3, 4), (3, 5), (2, 4)] {
        let (t, s) = lorentz_retract_maps(n, m)?;
        let small: Vec<RVec> = (0..samples).map(|_| random_member(&mut rng, n)).collect();
        let large: Vec<RVec> = (0..samples).map(|_| random_member(&mut rng, m)).collect();
        r.check(
            format!("padding-{n}-{m}"),
            format!("padding retract L{n} -> L{m} -> L{n}"),
            true,
            Some(Certificate::all(vec![
                Certificate::LorentzMaps {
                    t: t.clone(),
                    s: s.clone(),
                },
                Certificate::MatrixProduct {
                    left: s.clone(),
                    right: t.clone(),
                    product: RMat::identity(n),
                },
                Certificate::LorentzImages {
                    map: t.clone(),
                    points: small,
                },
                Certificate::LorentzImages {
                    map: s.clone(),
                    points: large.clone(),
                },
            ])),
        );
        if n == 3 {
            let tws = t.mul(&w)?.mul(&s)?;
            r.check(
                format!("embedded-rotation-{m}"),
                format!("T W S is positive on L{m} with trace -1"),
                true,
                Some(Certificate::all(vec![
                    Certificate::MatrixProduct {
                        left: t.mul(&w)?,
                        right: s.clone(),
                        product: tws.clone(),
                    },
                    Certificate::Trace {
                        matrix: tws.clone(),
                        value: int(-1),
                    },
                    Certificate::LorentzImages {
                        map: tws,
                        points: large,
                    },
                ])),
            );
        }
    }

    for k in 3..=8 {
        let p = inner_polyhedral_approx(k)?;
        let out = ray_outside_approx(k);
        let cert = match cone_membership(&out, p.cone.extremal_rays())? {
            Membership::Outside(separator) => Some(Certificate::all(vec![
                Certificate::LorentzMembers {
                    points: p.cone.extremal_rays().to_vec(),
                },
                Certificate::LorentzMembers {
                    points: vec![out.clone()],
                },
                Certificate::Separation {
                    point: out.clone(),
                    generators: p.cone.extremal_rays().to_vec(),
                    separator,
                },
            ])),
            Membership::Inside(_) => None,
        };
        r.check(
            format!("approximation-{k}"),
            format!("the {k}-gon cone lies inside L3 and misses a boundary ray"),
            cert.is_some(),
            cert,
        )
        .value("outside_ray", &out);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{partial_simplex_3, random_polygon};
    use crate::report::verify_report;

    fn assert_clean(r: &Report) {
        let v = verify_report(r);
        assert!(v.ok(), "{}\n{:?}", r.to_text(), v.failures);
    }

    #[test]
    fn analyze_square_and_degenerate_cones() {
        let sq = square_cone().cone;
        let r = analyze_report(&sq, "square");
        assert_clean(&r);
        assert_eq!(
            r.claims
                .iter()
                .find(|c| c.id == "extremal-rays")
                .unwrap()
                .values["count"],
            "4"
        );
        for c in [
            Cone::whole_space(2),
            Cone::zero(2),
            partial_simplex_3(),
            Cone::orthant(3),
        ] {
            assert_clean(&analyze_report(&c, "x"));
        }
    }

    #[test]
    fn square_conditions_all_fail_together() {
        let r = thm_min_equals_max_report(&square_cone().cone, "square").unwrap();
        assert_clean(&r);
        for id in [
            "simplex",
            "identity-separable",
            "nonnegative-trace",
            "min-eq-max",
        ] {
            let c = r.claims.iter().find(|c| c.id == id).unwrap();
            assert_eq!(c.values["holds"], "false", "{id}");
        }
        assert_clean(&square_rotation_report());
    }

    #[test]
    fn orthant_conditions_all_hold() {
        let r = thm_min_equals_max_report(&Cone::orthant(3), "orthant").unwrap();
        assert_clean(&r);
        assert!(r
            .claims
            .iter()
            .all(|c| c.values.get("holds").map_or(true, |h| h == "true")));
    }

    #[test]
    fn aubrun_instance() {
        let r = aubrun_report(&square_cone().cone, &partial_simplex_3()).unwrap();
        assert_clean(&r);
    }

    #[test]
    fn separable_and_entangled_maps() {
        let sq = square_cone().cone;
        let r = separable_report(&RMat::identity(3), &sq, &sq).unwrap();
        assert_clean(&r);
        assert_eq!(r.claims[1].statement, "the map is not separable");
        let o = Cone::orthant(3);
        let r = separable_report(&RMat::identity(3), &o, &o).unwrap();
        assert_clean(&r);
        assert_eq!(r.claims[2].values["n"], "3");
    }

    #[test]
    fn retracts_and_scan() {
        let sq = square_cone().cone;
        let (found, r) = scan_report(&sq, "square").unwrap();
        assert!(found.is_some());
        assert_clean(&r);
        let (found, r) = scan_report(&Cone::orthant(4), "orthant").unwrap();
        assert!(found.is_none());
        assert_clean(&r);
    }

    #[test]
    fn small_polygon_obstruction() {
        let mut rng = rng_from_seed(7);
        let e = random_polygon(&mut rng, 4);
        let f = random_polygon(&mut rng, 4);
        let r = thm_3x3_report(&e, &f).unwrap();
        assert_clean(&r);
    }

    #[test]
    fn lorentz_suite_small() {
        assert_clean(&lorentz_report(1, 10).unwrap());
    }

    #[test]
    fn tensor_and_duality_reports() {
        let sq = square_cone().cone;
        let (min, r) = tensor_report(TensorKind::Min, &sq, &sq);
        assert_eq!(min.extremal_rays().len(), 16);
        assert_clean(&r);
        let (max, r) = tensor_report(TensorKind::Max, &sq, &sq);
        assert_eq!(max.facets().len(), 16);
        assert_clean(&r);
        assert_clean(&duality_report(&Cone::orthant(2), &sq));
        assert_clean(&min_eq_max_report(&sq, &sq));
    }
}
