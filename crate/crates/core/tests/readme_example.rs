use revforge::{FormulaSet, Language, ParallelRevisionOperator, Tpo};

#[test]
fn library_example() -> revforge::Result<()> {
    let lang = Language::new(["A", "B"])?;
    let t = Tpo::uniform(2);
    let s: FormulaSet = [lang.parse("A")?, lang.parse("B")?].into_iter().collect();
    let r = ParallelRevisionOperator::default().revise(&t, &s, &lang)?;
    assert_eq!(r.to_string(), "[{11} < {01,10} < {00}]");
    Ok(())
}
