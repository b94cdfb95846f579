//! Iwasawa and Cartan component extraction in the matrix model, the ball
//! action, and the radius-vs-horocycle gap inequality.

use hyperq::group::*;
use hyperq::numerics::SampleStream;
use hyperq::quat::Quaternion;

fn main() {
    let ctx = GroupContext::new(2);
    let st = (SampleStream::new(7, 0), SampleStream::new(7, 1));
    let g = haar_k(ctx, &st, 0)
        .embed(ctx)
        .mul(&make_at(ctx, 1.3))
        .mul(&haar_k(ctx, &st, 1).embed(ctx));

    println!(
        "random g in Sp(2,1), form residual {:.2e}",
        g.form_residual()
    );
    let iw = iwasawa(&g);
    println!("H(g)      = {:+.12}", iw.h);
    println!("kappa(g)  = {:?} (Sp(1) part)", iw.vkappa);
    let cd = cartan(&g);
    println!("A+(g)     = {:+.12} (cosh A+ = |d|)", cd.t);
    println!("w = d/|d| = {:?}", cd.w);
    let (k1, k2) = cd.full_components().unwrap();
    let re = k1.embed(ctx).mul(&make_at(ctx, cd.t)).mul(&k2.embed(ctx));
    println!(
        "reassembly k1 a_t k2 residual = {:.2e}",
        re.matrix().sub(g.matrix()).max_norm()
    );

    let zero = vec![Quaternion::ZERO; 2];
    let moved = ball_action(&g, &zero);
    println!("g.0 = {:?}, |g.0| = {:.6}", moved, point_norm(&moved));

    println!("\ngap A+(g^-1 k a_t) - H(g^-1 k a_t) against its bound:");
    println!("{:>4} {:>14} {:>14}", "t", "gap", "bound");
    let x0 = point_norm(&g.dot_zero());
    for i in 0..=6 {
        let t = i as f64;
        let k = haar_k(ctx, &st, 10);
        let gp = gap(&g, &k, t);
        let bound = (1.0 + x0) / (1.0 - x0) * (-2.0 * t).exp();
        println!("{t:>4.1} {gp:>14.6e} {bound:>14.6e}");
    }
}
