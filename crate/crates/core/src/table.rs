//! Dimension and deficiency tables, one column per weight.

use serde::Serialize;

use crate::enumerate::enumerate_admissible;
use crate::error::Result;
use crate::okounkov::{verify_okounkov, IiLattice};
use crate::relations::{
    augmented_deficiency, deficiency_with_g_import, dim_lower_bound, gen_all, window_rank,
    RelationKind,
};
use crate::zword::TypeTag;

#[derive(Clone, Debug)]
pub struct TableOptions {
    pub order: usize,
    /// Extra weight of the relations used for the improved deficiency.
    pub delta: u32,
    /// Weight of imported G relations for the improved deficiency.
    pub g_weight: Option<u32>,
    /// O columns up to this weight are certified through the type II lattice.
    pub certify_up_to: u32,
}

impl Default for TableOptions {
    fn default() -> Self {
        Self {
            order: 100,
            delta: 0,
            g_weight: None,
            certify_up_to: 6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Column {
    pub weight: u32,
    pub count: usize,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ds: Option<usize>,
    /// P-R relations beyond DBSF (G only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pr: Option<usize>,
    /// Duality relations beyond the rows above.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub du: Option<usize>,
    /// Rank of the O relations (certified where possible).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deficiency: Option<usize>,
    /// Deficiency after adding the relations selected in [`TableOptions`].
    #[serde(skip_serializing_if = "Option::is_none")]
    pub improved: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table {
    #[serde(rename = "type")]
    pub ty: TypeTag,
    pub columns: Vec<Column>,
}

pub fn first_weight(ty: TypeTag) -> u32 {
    match ty {
        TypeTag::ITilde | TypeTag::I | TypeTag::IV | TypeTag::O => 2,
        _ => 1,
    }
}

pub fn column(ty: TypeTag, w: u32, opts: &TableOptions) -> Result<Column> {
    if ty == TypeTag::O {
        return o_column(w, opts);
    }
    let words = enumerate_admissible(ty, w);
    let dim = dim_lower_bound(&words, ty, opts.order)?;
    let sys = gen_all(ty, w)?;
    let rank = |kinds: &[RelationKind]| {
        let sub = sys.filtered(kinds);
        if ty.parent().is_some() {
            window_rank(&sub, ty, w)
        } else {
            sub.rank()
        }
    };
    let ds = rank(&[RelationKind::Dbsf]);
    let all = rank(&[RelationKind::Dbsf, RelationKind::Duality, RelationKind::PR]);
    let (pr, du) = if ty == TypeTag::G {
        let with_pr = rank(&[RelationKind::Dbsf, RelationKind::PR]);
        (Some(with_pr - ds), all - with_pr)
    } else {
        (None, all - ds)
    };
    let deficiency = words.len() as i64 - dim as i64 - all as i64;
    if deficiency < 0 {
        return Err(crate::Error::NegativeDeficiency(deficiency));
    }
    let deficiency = deficiency as usize;
    let improved = if deficiency == 0 {
        None
    } else if let Some(g) = opts.g_weight {
        Some(deficiency_with_g_import(ty, w, opts.delta, g, opts.order)?)
    } else if opts.delta > 0 {
        Some(augmented_deficiency(ty, w, opts.delta, opts.order)?)
    } else {
        None
    };
    Ok(Column {
        weight: w,
        count: words.len(),
        dim,
        ds: Some(ds),
        pr,
        du: Some(du),
        relations: None,
        deficiency: Some(deficiency),
        improved,
    })
}

fn o_column(w: u32, opts: &TableOptions) -> Result<Column> {
    let lattice = if w <= opts.certify_up_to {
        Some(IiLattice::new(w)?)
    } else {
        None
    };
    let report = verify_okounkov(w, opts.order, lattice.as_ref())?;
    let dim = report.certified_dim.unwrap_or(report.series_rank);
    Ok(Column {
        weight: w,
        count: report.words,
        dim: report.series_rank,
        ds: None,
        pr: None,
        du: None,
        relations: Some(report.words - dim),
        deficiency: None,
        improved: None,
    })
}

pub fn table(ty: TypeTag, max_weight: u32, opts: &TableOptions) -> Result<Table> {
    let columns = (first_weight(ty)..=max_weight)
        .map(|w| column(ty, w, opts))
        .collect::<Result<_>>()?;
    Ok(Table { ty, columns })
}

impl Table {
    fn rows(&self) -> Vec<(String, Vec<String>)> {
        let t = self.ty.label();
        let cells = |f: &dyn Fn(&Column) -> Option<String>| -> Option<Vec<String>> {
            let v: Vec<Option<String>> = self.columns.iter().map(f).collect();
            v.iter()
                .any(Option::is_some)
                .then(|| v.into_iter().map(Option::unwrap_or_default).collect())
        };
        let num = |x: Option<usize>| x.map(|v| v.to_string());
        let mut rows = vec![
            ("w".to_string(), cells(&|c| Some(c.weight.to_string()))),
            (
                format!("#(W)^{t}_{{<=w}}"),
                cells(&|c| Some(c.count.to_string())),
            ),
            (
                format!("lower bound of dim Z^{t}_{{<=w}}"),
                cells(&|c| Some(c.dim.to_string())),
            ),
        ];
        if self.ty == TypeTag::O {
            rows.push((
                format!("dim DS^{t}_{{<=w}} ∪ DU^G_{{<=w}}"),
                cells(&|c| num(c.relations)),
            ));
        } else if self.ty == TypeTag::G {
            rows.push((format!("dim DS^{t}_{{<=w}}"), cells(&|c| num(c.ds))));
            rows.push((
                format!("dim P-R^{t}_{{<=w}} \\ (DS^{t}_{{<=w}} ∪ DU^{t}_{{<=w}})"),
                cells(&|c| num(c.pr)),
            ));
            rows.push((
                format!("dim DU^{t}_{{<=w}} \\ (P-R^{t}_{{<=w}} ∪ DS^{t}_{{<=w}})"),
                cells(&|c| num(c.du)),
            ));
        } else {
            rows.push((format!("dim DS^{t}_{{<=w}}"), cells(&|c| num(c.ds))));
            rows.push((
                format!("dim (DU^{t}_{{<=w}} \\ DS^{t}_{{<=w}})"),
                cells(&|c| num(c.du)),
            ));
        }
        if self.ty != TypeTag::O {
            rows.push((
                "deficiency".to_string(),
                cells(&|c| {
                    c.deficiency.map(|d| match c.improved {
                        Some(i) => format!("{d},{i}"),
                        None => d.to_string(),
                    })
                }),
            ));
        }
        rows.into_iter()
            .filter_map(|(label, v)| v.map(|v| (label, v)))
            .collect()
    }

    pub fn render_text(&self) -> String {
        let rows = self.rows();
        let label_width = rows
            .iter()
            .map(|(l, _)| l.chars().count())
            .max()
            .unwrap_or(0);
        let cell_width = rows
            .iter()
            .flat_map(|(_, v)| v.iter().map(String::len))
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for (label, cells) in rows {
            let pad = label_width - label.chars().count();
            out.push_str(&label);
            out.push_str(&" ".repeat(pad));
            for c in cells {
                out.push_str(&format!(" | {c:>cell_width$}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_ii_small() {
        let t = table(TypeTag::II, 3, &TableOptions::default()).unwrap();
        let c = &t.columns[0];
        assert_eq!(
            (c.count, c.dim, c.ds, c.du, c.deficiency),
            (1, 1, Some(0), Some(0), Some(0))
        );
        assert_eq!(t.columns[2].count, 19);
        assert_eq!(t.columns[2].ds, Some(5));
    }

    #[test]
    fn type_g_weight_3() {
        let c = column(TypeTag::G, 3, &TableOptions::default()).unwrap();
        assert_eq!(
            (c.count, c.dim, c.ds, c.pr, c.du, c.deficiency),
            (49, 12, Some(8), Some(27), Some(2), Some(0))
        );
    }

    #[test]
    fn augmented_cell() {
        let opts = TableOptions {
            delta: 1,
            ..TableOptions::default()
        };
        let c = column(TypeTag::ITilde, 3, &opts).unwrap();
        assert_eq!((c.deficiency, c.improved), (Some(1), Some(0)));
        let text = Table {
            ty: TypeTag::ITilde,
            columns: vec![c],
        }
        .render_text();
        assert!(text.contains("1,0"), "{text}");
    }

    #[test]
    fn o_columns() {
        let t = table(
            TypeTag::O,
            5,
            &TableOptions {
                order: 60,
                ..TableOptions::default()
            },
        )
        .unwrap();
        let rel: Vec<_> = t.columns.iter().map(|c| c.relations.unwrap()).collect();
        assert_eq!(rel, [0, 0, 0, 0]);
        assert!(t.render_text().contains("DU^G"));
    }
}
