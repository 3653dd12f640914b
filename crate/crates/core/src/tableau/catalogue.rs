use super::{rats, ButcherTableau, TableauError};

pub struct CatalogueEntry {
    pub name: &'static str,
    pub tableau: ButcherTableau,
}

fn build(
    name: &'static str,
    label: &str,
    order: u32,
    c: &[(i64, i64)],
    a: &[&[(i64, i64)]],
    b: &[(i64, i64)],
) -> CatalogueEntry {
    let tableau = ButcherTableau::new(rats(c), a.iter().map(|row| rats(row)).collect(), rats(b))
        .expect("catalogue entries are well formed")
        .with_label(label)
        .with_order(order);
    CatalogueEntry { name, tableau }
}

/// The built-in methods, lowest order first.
pub fn catalogue() -> Vec<CatalogueEntry> {
    vec![
        build("euler", "Euler", 1, &[(0, 1)], &[&[]], &[(1, 1)]),
        build(
            "improved-euler",
            "improved Euler",
            2,
            &[(0, 1), (1, 1)],
            &[&[], &[(1, 1)]],
            &[(1, 2), (1, 2)],
        ),
        build(
            "kutta3",
            "Kutta third order",
            3,
            &[(0, 1), (1, 2), (1, 1)],
            &[&[], &[(1, 2)], &[(-1, 1), (2, 1)]],
            &[(1, 6), (2, 3), (1, 6)],
        ),
        build(
            "heun3",
            "Heun third order",
            3,
            &[(0, 1), (1, 3), (2, 3)],
            &[&[], &[(1, 3)], &[(0, 1), (2, 3)]],
            &[(1, 4), (0, 1), (3, 4)],
        ),
        build(
            "rk3-c2-minus-one",
            "third order with c2 = -1, c3 = 1",
            3,
            &[(0, 1), (-1, 1), (1, 1)],
            &[&[], &[(-1, 1)], &[(7, 5), (-2, 5)]],
            &[(2, 3), (-1, 12), (5, 12)],
        ),
        build(
            "rk4",
            "classic fourth order",
            4,
            &[(0, 1), (1, 2), (1, 2), (1, 1)],
            &[&[], &[(1, 2)], &[(0, 1), (1, 2)], &[(0, 1), (0, 1), (1, 1)]],
            &[(1, 6), (1, 3), (1, 3), (1, 6)],
        ),
        build(
            "kutta38",
            "Kutta 3/8 rule",
            4,
            &[(0, 1), (1, 3), (2, 3), (1, 1)],
            &[&[], &[(1, 3)], &[(-1, 3), (1, 1)], &[(1, 1), (-1, 1), (1, 1)]],
            &[(1, 8), (3, 8), (3, 8), (1, 8)],
        ),
    ]
}

pub fn lookup(name: &str) -> Result<ButcherTableau, TableauError> {
    catalogue()
        .into_iter()
        .find(|e| e.name == name)
        .map(|e| e.tableau)
        .ok_or_else(|| TableauError::UnknownName(name.to_string()))
}
