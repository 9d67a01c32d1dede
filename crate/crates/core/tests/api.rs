use kron_tensor::kron::{kron_apply_oracle, kronsum};
use kron_tensor::linalg::{CsrMatrix, Matrix};
use kron_tensor::random::{perturbed_identity, random_matrix, random_tensor, seeded_rng};
use kron_tensor::scalar::rel_inf_error;
use kron_tensor::{cttucker, itucker, kronsumv, tucker, tuckerfun, ColumnFn, ColumnOperator, FactorizedStack, Tensor, C64};

#[test]
fn tucker_family_agrees_through_public_api() {
    let mut rng = seeded_rng(100);
    let t: Tensor<C64> = random_tensor(&mut rng, &[3, 4, 2]);
    let ls: Vec<Matrix<C64>> = [(2, 3), (5, 4), (3, 2)].iter().map(|&(r, c)| random_matrix(&mut rng, r, c)).collect();
    let expect = kron_apply_oracle(&ls, &t).unwrap();
    assert!(rel_inf_error(tucker(&t, &ls).unwrap().data(), expect.data()) < 1e-13);
    let adj: Vec<Matrix<C64>> = ls.iter().map(Matrix::conj_transpose).collect();
    assert!(rel_inf_error(cttucker(&t, &adj).unwrap().data(), expect.data()) < 1e-13);
    let ops: Vec<&dyn ColumnOperator<C64>> = ls.iter().map(|l| l as &dyn ColumnOperator<C64>).collect();
    assert!(rel_inf_error(tuckerfun(&t, &ops).unwrap().data(), expect.data()) < 1e-13);
}

#[test]
fn column_function_operator_doubles() {
    let t: Tensor<f64> = random_tensor(&mut seeded_rng(101), &[2, 3]);
    let double = ColumnFn::preserving(|m: &Matrix<f64>| m.scale(2.0));
    let got = tuckerfun(&t, &[&double, &double]).unwrap();
    assert!(rel_inf_error(got.data(), t.scale(4.0).data()) < 1e-15);
}

#[test]
fn kronsum_action_matches_sparse_and_dense_assembly() {
    let mut rng = seeded_rng(102);
    let a: Vec<Matrix<f64>> = [3, 2, 4].iter().map(|&n| random_matrix(&mut rng, n, n)).collect();
    let v: Tensor<f64> = random_tensor(&mut rng, &[3, 2, 4]);
    let got = kronsumv(&v, &a).unwrap();
    let dense = kronsum(&a).unwrap();
    let sparse = CsrMatrix::kronsum(&a).unwrap();
    let mut y = vec![0.0; 24];
    sparse.matvec(v.data(), &mut y);
    let yd: Vec<f64> = (0..24).map(|i| (0..24).map(|j| dense[(i, j)] * v.data()[j]).sum()).collect();
    assert!(rel_inf_error(got.data(), &y) < 1e-14);
    assert!(rel_inf_error(got.data(), &yd) < 1e-14);
}

#[test]
fn itucker_inverts_tucker() {
    let mut rng = seeded_rng(103);
    let t: Tensor<f64> = random_tensor(&mut rng, &[4, 3, 5]);
    let ps: Vec<Matrix<f64>> = [4, 3, 5].iter().map(|&n| perturbed_identity(&mut rng, n, 0.25)).collect();
    let stack = FactorizedStack::new(&ps).unwrap();
    let back = itucker(&tucker(&t, &ps).unwrap(), &stack).unwrap();
    assert!(rel_inf_error(back.data(), t.data()) < 1e-12);
}
