use singraph::resgraph::{blow_down, blow_down_step, BlowDownMode, PlumbingGraph};

fn main() {
    // a(-3) - c(-1) - b(-2)
    let mut g = PlumbingGraph::new();
    let a = g.add_vertex(0, -3);
    let c = g.add_vertex(0, -1);
    let b = g.add_vertex(0, -2);
    g.connect(a, c).unwrap();
    g.connect(c, b).unwrap();
    println!("before: {:?}", g.self_intersections());
    if let Some(once) = blow_down_step(&g, BlowDownMode::Default) {
        println!("one step: {:?}", once.self_intersections());
    }
    let done = blow_down(&g, BlowDownMode::Default);
    println!(
        "fixpoint: {:?}, |det| {} -> {}",
        done.self_intersections(),
        g.intersection_matrix().det_abs(),
        done.intersection_matrix().det_abs()
    );
}
