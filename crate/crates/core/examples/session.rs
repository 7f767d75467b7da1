//! Running a session from text, as the `engine` binary does.

use ornament_engine::frontend::run_text;

const SESSION: &str = r#"
; naturals, then lists as an ornament of them
(desc NatD (enum star) (enum star)
  ((star (sigma (enum z s) ((z one) (s (var star)))))))
(fn id-star (enum star) (enum star) ((star star)))
(orn ListOrn NatD id-star id-star
  ((star (sigma ((z one) (s (insert (enum a b) ((a (var-inv star)) (b (var-inv star))))))))))

(orn-interp ListD ListOrn)
(mu-count ListD star 3)
(forget ListOrn (con (pair s (pair a (con (pair z unit))))))
(orn-to-cart ListCart ListOrn)
(derive ListHole ListD star)
"#;

fn main() {
    let out = run_text(SESSION, 3);
    print!("{}", out.render());
    println!("exit code {}", out.exit_code());
}
