use paradox_core::certify::certify_paradoxical;
use paradox_core::constructions::by_name;
use std::time::Instant;

fn main() {
    let names = [
        "yablo",
        "gapped-yablo:1",
        "gapped-yablo:2",
        "gapped-yablo:3",
        "sawblade:raw",
        "sawblade:closed",
        "sawblade:composed:3",
        "sawblade:dec-yc",
        "sawblade:dec-pair",
        "sawblade:shared-y",
        "oa1",
        "oa2",
        "oa3",
        "oa4",
        "oa5",
        "procrastination",
        "two-arrow",
        "diamond:versuch-left",
        "diamond:versuch-right",
        "diamond:rhombus-basic",
        "diamond:rhombus-basic-sync",
        "diamond:essential",
        "diamond:matrix5",
    ];
    let depths: Vec<usize> = std::env::args().skip(1).map(|a| a.parse().unwrap()).collect();
    for n in names {
        let g = by_name(n).unwrap();
        for &d in &depths {
            let t = Instant::now();
            let r = certify_paradoxical(g.as_ref(), d);
            match r {
                Ok(r) => println!("{n:28} d={d} {:?} {:?} {:?} {:?}", r.verdict, r.level, r.notes, t.elapsed()),
                Err(e) => println!("{n:28} d={d} ERR {e}"),
            }
        }
    }
}
