//! Built-in example modules, each certified by the validators in the test
//! suite. The catalog spans the feature matrix: adjoint and coadjoint
//! crossed modules, degenerate reductions, and nilpotent 2-crossed modules
//! with nontrivial maps, liftings, actions, and invariant pairings.

use crate::algebra::{embed_dcm, Action, Bilinear, D2CModule, DCModule, LieAlgebra, LinMap};
use crate::linalg::RatMatrix;
use crate::pairing::PairingData;
use crate::rat::{rat, Rat};

/// A catalog module is either a crossed module or a 2-crossed module.
#[derive(Debug, Clone)]
pub enum ModuleKind {
    Crossed(DCModule),
    TwoCrossed(D2CModule),
}

impl ModuleKind {
    /// Uniform 2-crossed view: crossed modules embed with l = 0.
    pub fn as_two_crossed(&self) -> D2CModule {
        match self {
            ModuleKind::Crossed(m) => embed_dcm(m),
            ModuleKind::TwoCrossed(m) => m.clone(),
        }
    }

    pub fn as_crossed(&self) -> Option<&DCModule> {
        match self {
            ModuleKind::Crossed(m) => Some(m),
            ModuleKind::TwoCrossed(_) => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub kind: ModuleKind,
    /// Canonical invariant forms carried by the module, possibly empty.
    pub pairing: PairingData,
    /// Whether the module is fine (the induced action of h on l agrees
    /// with the action pulled through alpha).
    pub fine: bool,
}

fn basis_vec(dim: usize, entries: &[(usize, i64)]) -> Vec<Rat> {
    let mut v = vec![Rat::from_integer(0.into()); dim];
    for &(i, c) in entries {
        v[i] = rat(c);
    }
    v
}

/// The cross-product algebra on three generators: [e_i, e_j] = eps_ijk e_k.
fn cross_product_algebra() -> LieAlgebra {
    let mut la = LieAlgebra::abelian(3);
    for &(i, j, k) in &[(0usize, 1usize, 2usize), (1, 2, 0), (2, 0, 1)] {
        la.bracket[i][j] = basis_vec(3, &[(k, 1)]);
        la.bracket[j][i] = basis_vec(3, &[(k, -1)]);
    }
    la
}

/// The Heisenberg algebra: [e_1, e_2] = e_3, e_3 central.
fn heisenberg() -> LieAlgebra {
    let mut la = LieAlgebra::abelian(3);
    la.bracket[0][1] = basis_vec(3, &[(2, 1)]);
    la.bracket[1][0] = basis_vec(3, &[(2, -1)]);
    la
}

/// Coadjoint action of a Lie algebra on its dual basis:
/// (X |> f_a)(Y) = -f_a([X, Y]).
fn coadjoint(la: &LieAlgebra) -> Action {
    let n = la.dim;
    let mut ops = vec![vec![vec![Rat::from_integer(0.into()); n]; n]; n];
    for i in 0..n {
        for a in 0..n {
            for j in 0..n {
                // coefficient of f_j in X_i |> f_a
                ops[i][a][j] = -la.bracket[i][j][a].clone();
            }
        }
    }
    Action::new(n, n, ops)
}

fn mat(rows: &[&[i64]]) -> RatMatrix {
    RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
}

fn adjoint_entry() -> CatalogEntry {
    let g = cross_product_algebra();
    let m = DCModule {
        h: g.clone(),
        alpha: LinMap::identity(3),
        act: Action::adjoint(&g),
        g,
    };
    CatalogEntry {
        name: "adjoint",
        description: "adjoint crossed module over the cross-product algebra: h = g, alpha = id, action = ad",
        kind: ModuleKind::Crossed(m),
        pairing: PairingData {
            pair_g: Some(mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])),
            pair_gh: Some(mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])),
            ..Default::default()
        },
        fine: true,
    }
}

fn heis_adjoint_entry() -> CatalogEntry {
    // Adjoint crossed module over a nilpotent base: h = g = Heisenberg,
    // alpha = id, action = ad. Unlike the cross-product version, every
    // generator exponentiates to an exact polynomial group element, so this
    // is the smallest catalog module with a nonabelian h that supports
    // gauge transformations.
    let g = heisenberg();
    let m = DCModule {
        h: g.clone(),
        alpha: LinMap::identity(3),
        act: Action::adjoint(&g),
        g,
    };
    CatalogEntry {
        name: "heis_adjoint",
        description: "adjoint crossed module over the Heisenberg algebra: nonabelian h with exactly polynomial group exponentials",
        kind: ModuleKind::Crossed(m),
        pairing: PairingData::default(),
        fine: true,
    }
}

fn heis_coadjoint_dcm() -> DCModule {
    let g = heisenberg();
    DCModule {
        act: coadjoint(&g),
        h: LieAlgebra::abelian(3),
        alpha: LinMap::zero(3, 3),
        g,
    }
}

fn heis_coadjoint_entry() -> CatalogEntry {
    CatalogEntry {
        name: "heis_coadjoint",
        description: "Heisenberg algebra acting coadjointly on its abelian dual: alpha = 0, nilpotent, canonical duality pairing",
        kind: ModuleKind::Crossed(heis_coadjoint_dcm()),
        pairing: PairingData {
            pair_gh: Some(mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])),
            ..Default::default()
        },
        fine: true,
    }
}

fn l0_entry() -> CatalogEntry {
    CatalogEntry {
        name: "l0",
        description: "2-crossed module with l = 0, the embedded image of heis_coadjoint",
        kind: ModuleKind::TwoCrossed(embed_dcm(&heis_coadjoint_dcm())),
        pairing: PairingData {
            pair_gh: Some(mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])),
            ..Default::default()
        },
        fine: true,
    }
}

fn abelian_entry() -> CatalogEntry {
    let m = D2CModule {
        g: LieAlgebra::abelian(2),
        h: LieAlgebra::abelian(2),
        l: LieAlgebra::abelian(2),
        alpha: LinMap::zero(2, 2),
        beta: LinMap::zero(2, 2),
        act_h: Action::trivial(2, 2),
        act_l: Action::trivial(2, 2),
        lift: Bilinear::zero(2, 2),
    };
    CatalogEntry {
        name: "abelian",
        description: "fully abelian three-term complex with zero maps, actions, and lifting",
        kind: ModuleKind::TwoCrossed(m),
        pairing: PairingData {
            pair_h: Some(mat(&[&[0, 1], &[-1, 0]])),
            pair_gl: Some(mat(&[&[1, 0], &[0, 1]])),
            ..Default::default()
        },
        fine: true,
    }
}

fn nil3_entry() -> CatalogEntry {
    // g = span{x1,x2}, h = span{u1,u2}, l = span{z1,z2}, all abelian;
    // x1 |> u2 = u1; alpha(u2) = x2; beta(z2) = u1; {u2,u2} = z1.
    let mut act_h = Action::trivial(2, 2);
    act_h.ops[0][1] = basis_vec(2, &[(0, 1)]);
    let mut alpha = LinMap::zero(2, 2);
    alpha.cols[1] = basis_vec(2, &[(1, 1)]);
    let mut beta = LinMap::zero(2, 2);
    beta.cols[1] = basis_vec(2, &[(0, 1)]);
    let mut lift = Bilinear::zero(2, 2);
    lift.table[1][1] = basis_vec(2, &[(0, 1)]);
    let m = D2CModule {
        g: LieAlgebra::abelian(2),
        h: LieAlgebra::abelian(2),
        l: LieAlgebra::abelian(2),
        alpha,
        beta,
        act_h,
        act_l: Action::trivial(2, 2),
        lift,
    };
    CatalogEntry {
        name: "nil3",
        description: "nilpotent upper-triangular 2-crossed module with alpha, beta, action, and lifting all nonzero, carrying a nondegenerate invariant pairing",
        kind: ModuleKind::TwoCrossed(m),
        pairing: PairingData {
            pair_h: Some(mat(&[&[0, -2], &[2, 0]])),
            pair_gl: Some(mat(&[&[1, 0], &[0, 2]])),
            ..Default::default()
        },
        fine: true,
    }
}

fn heis3_entry() -> CatalogEntry {
    // g = Heisenberg, h = coadjoint dual, l = R with {f3, f3} = z.
    let g = heisenberg();
    let act_h = coadjoint(&g);
    let mut lift = Bilinear::zero(3, 1);
    lift.table[2][2] = basis_vec(1, &[(0, 1)]);
    let m = D2CModule {
        h: LieAlgebra::abelian(3),
        l: LieAlgebra::abelian(1),
        alpha: LinMap::zero(3, 3),
        beta: LinMap::zero(1, 3),
        act_h,
        act_l: Action::trivial(3, 1),
        lift,
        g,
    };
    CatalogEntry {
        name: "heis3",
        description: "nonabelian nilpotent base: Heisenberg g, coadjoint h, one-dimensional l with nonzero lifting",
        kind: ModuleKind::TwoCrossed(m),
        pairing: PairingData::default(),
        fine: true,
    }
}

fn heis_l_entry() -> CatalogEntry {
    // g = Heisenberg acting coadjointly on both h and l (two copies of the
    // dual), beta = id, zero lifting.
    let g = heisenberg();
    let act = coadjoint(&g);
    let m = D2CModule {
        h: LieAlgebra::abelian(3),
        l: LieAlgebra::abelian(3),
        alpha: LinMap::zero(3, 3),
        beta: LinMap::identity(3),
        act_h: act.clone(),
        act_l: act,
        lift: Bilinear::zero(3, 3),
        g,
    };
    CatalogEntry {
        name: "heis_l",
        description: "Heisenberg base with beta = id between two coadjoint copies, exercising a nontrivial action on l",
        kind: ModuleKind::TwoCrossed(m),
        pairing: PairingData::default(),
        fine: true,
    }
}

fn heis_sp_entry() -> CatalogEntry {
    // Symplectic-representation module: g = Heisenberg, h = R^2 with
    // T(e1): u2 -> u1, l = coadjoint dual, lifting {Y1,Y2} defined through
    // the symplectic form so that the canonical pairing laws hold:
    // {u2, u2} = f1 and all other basis liftings vanish.
    let g = heisenberg();
    let mut act_h = Action::trivial(3, 2);
    act_h.ops[0][1] = basis_vec(2, &[(0, 1)]);
    let act_l = coadjoint(&g);
    let mut lift = Bilinear::zero(2, 3);
    lift.table[1][1] = basis_vec(3, &[(0, 1)]);
    let m = D2CModule {
        h: LieAlgebra::abelian(2),
        l: LieAlgebra::abelian(3),
        alpha: LinMap::zero(2, 3),
        beta: LinMap::zero(3, 2),
        act_h,
        act_l,
        lift,
        g,
    };
    CatalogEntry {
        name: "heis_sp",
        description: "Heisenberg g with a symplectic rank-2 h and coadjoint l: nonabelian base with nondegenerate invariant pairing",
        kind: ModuleKind::TwoCrossed(m),
        pairing: PairingData {
            pair_h: Some(mat(&[&[0, -2], &[2, 0]])),
            pair_gl: Some(mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])),
            ..Default::default()
        },
        fine: true,
    }
}

fn so3_lift_entry() -> CatalogEntry {
    // Identity tower: beta = id between two copies of the cross-product
    // algebra, lifting given by the bracket. The lifting axioms reduce to
    // the Jacobi identity; the induced action is Y |>' Z = [Y, Z], which
    // does not factor through alpha = 0, so the module is not fine.
    let so3 = cross_product_algebra();
    let lift = Bilinear::new(3, 3, so3.bracket.clone());
    let m = D2CModule {
        g: LieAlgebra::abelian(1),
        h: so3.clone(),
        l: so3,
        alpha: LinMap::zero(3, 1),
        beta: LinMap::identity(3),
        act_h: Action::trivial(1, 3),
        act_l: Action::trivial(1, 3),
        lift,
    };
    CatalogEntry {
        name: "so3_lift",
        description: "beta = id tower over the cross-product algebra with bracket lifting: valid, nonabelian h and l, not fine",
        kind: ModuleKind::TwoCrossed(m),
        pairing: PairingData::default(),
        fine: false,
    }
}

fn pre_nil_entry() -> CatalogEntry {
    // Nilpotent module whose upper layer is pre-crossed but not crossed:
    // alpha(u1) = x and x |> u1 = u2, so the Peiffer term alpha(u1) |> u1
    // has no bracket to cancel against. The lifting {u1,u1} = -z repairs it
    // (beta(z) = u2), and the symmetrized lifting survives beta. Identities
    // that need a crossed upper layer fail here with exactly that leftover.
    let mut act_h = Action::trivial(1, 2);
    act_h.ops[0][0] = basis_vec(2, &[(1, 1)]);
    let mut alpha = LinMap::zero(2, 1);
    alpha.cols[0] = basis_vec(1, &[(0, 1)]);
    let mut beta = LinMap::zero(1, 2);
    beta.cols[0] = basis_vec(2, &[(1, 1)]);
    let mut lift = Bilinear::zero(2, 1);
    lift.table[0][0] = basis_vec(1, &[(0, -1)]);
    let m = D2CModule {
        g: LieAlgebra::abelian(1),
        h: LieAlgebra::abelian(2),
        l: LieAlgebra::abelian(1),
        alpha,
        beta,
        act_h,
        act_l: Action::trivial(1, 1),
        lift,
    };
    CatalogEntry {
        name: "pre_nil",
        description: "nilpotent module over a pre-crossed (not crossed) upper layer: the symmetrized Peiffer lifting survives beta",
        kind: ModuleKind::TwoCrossed(m),
        pairing: PairingData::default(),
        fine: false,
    }
}

fn fine_nil_entry() -> CatalogEntry {
    // Fine module whose induced action is nonzero: x1 |> z2 = z1 on l,
    // alpha(u2) = x1, beta(z2) = u1, lifting {u1,u2} = -z1, trivial action
    // on h. Then Y |>' Z = -{beta(Z), Y} agrees with alpha(Y) |> Z and both
    // are nonzero at (u2, z2).
    let mut act_l = Action::trivial(2, 2);
    act_l.ops[0][1] = basis_vec(2, &[(0, 1)]);
    let mut alpha = LinMap::zero(2, 2);
    alpha.cols[1] = basis_vec(2, &[(0, 1)]);
    let mut beta = LinMap::zero(2, 2);
    beta.cols[1] = basis_vec(2, &[(0, 1)]);
    let mut lift = Bilinear::zero(2, 2);
    lift.table[0][1] = basis_vec(2, &[(0, -1)]);
    let m = D2CModule {
        g: LieAlgebra::abelian(2),
        h: LieAlgebra::abelian(2),
        l: LieAlgebra::abelian(2),
        alpha,
        beta,
        act_h: Action::trivial(2, 2),
        act_l,
        lift,
    };
    CatalogEntry {
        name: "fine_nil",
        description: "fine nilpotent module with nonzero induced action on l; carries an invariant pairing that is necessarily singular",
        kind: ModuleKind::TwoCrossed(m),
        pairing: PairingData {
            pair_h: Some(mat(&[&[0, 1], &[-1, 0]])),
            pair_gl: Some(mat(&[&[0, -1], &[0, 0]])),
            ..Default::default()
        },
        fine: true,
    }
}

fn dim1_entry() -> CatalogEntry {
    // One-dimensional g and h with alpha = id and trivial action; the
    // smallest module carrying a nonsingular pairing.
    let m = DCModule {
        g: LieAlgebra::abelian(1),
        h: LieAlgebra::abelian(1),
        alpha: LinMap::identity(1),
        act: Action::trivial(1, 1),
    };
    CatalogEntry {
        name: "dim1",
        description: "one-dimensional crossed module: abelian g = h, alpha = id, trivial action",
        kind: ModuleKind::Crossed(m),
        pairing: PairingData { pair_gh: Some(mat(&[&[1]])), ..Default::default() },
        fine: true,
    }
}

/// All built-in modules, in a fixed order.
pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        adjoint_entry(),
        heis_adjoint_entry(),
        heis_coadjoint_entry(),
        l0_entry(),
        abelian_entry(),
        nil3_entry(),
        heis3_entry(),
        heis_l_entry(),
        heis_sp_entry(),
        so3_lift_entry(),
        pre_nil_entry(),
        fine_nil_entry(),
        dim1_entry(),
    ]
}

pub fn catalog_names() -> Vec<&'static str> {
    catalog().iter().map(|e| e.name).collect()
}

pub fn get(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}
