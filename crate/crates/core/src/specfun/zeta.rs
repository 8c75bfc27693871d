use crate::error::{Error, Result};

// B_0, B_2, ..., B_64
const BERNOULLI_EVEN: [f64; 33] = [
    1.0,
    0.16666666666666666,
    -0.03333333333333333,
    0.023809523809523808,
    -0.03333333333333333,
    0.07575757575757576,
    -0.2531135531135531,
    1.1666666666666667,
    -7.092156862745098,
    54.971177944862156,
    -529.1242424242424,
    6192.123188405797,
    -86580.25311355312,
    1425517.1666666667,
    -27298231.067816094,
    601580873.9006424,
    -15116315767.092157,
    429614643061.1667,
    -13711655205088.332,
    488332318973593.2,
    -1.9296579341940068e+16,
    8.416930475736826e+17,
    -4.0338071854059454e+19,
    2.1150748638081993e+21,
    -1.2086626522296526e+23,
    7.500866746076964e+24,
    -5.038778101481069e+26,
    3.6528776484818122e+28,
    -2.849876930245088e+30,
    2.3865427499683627e+32,
    -2.1399949257225335e+34,
    2.0500975723478097e+36,
    -2.093800591134638e+38,
];

// zeta(2), ..., zeta(32)
const ZETA_TABLE: [f64; 31] = [
    1.6449340668482264,
    1.2020569031595942,
    1.0823232337111381,
    1.03692775514337,
    1.0173430619844492,
    1.008349277381923,
    1.0040773561979444,
    1.0020083928260821,
    1.000994575127818,
    1.0004941886041194,
    1.000246086553308,
    1.0001227133475785,
    1.0000612481350588,
    1.000030588236307,
    1.0000152822594086,
    1.0000076371976379,
    1.000003817293265,
    1.0000019082127165,
    1.0000009539620338,
    1.0000004769329869,
    1.0000002384505027,
    1.000000119219926,
    1.000000059608189,
    1.0000000298035034,
    1.0000000149015549,
    1.0000000074507118,
    1.000000003725334,
    1.0000000018626598,
    1.0000000009313275,
    1.0000000004656628,
    1.000000000232831,
];

/// Bernoulli number B_k for k <= 64 (B_1 = -1/2, odd k > 1 vanish).
pub fn bernoulli(k: u32) -> Result<f64> {
    match k {
        1 => Ok(-0.5),
        k if k > 64 => Err(Error::OutOfTable(format!("B_{k}"))),
        k if k % 2 == 1 => Ok(0.0),
        k => Ok(BERNOULLI_EVEN[(k / 2) as usize]),
    }
}

/// Riemann zeta at an integer l >= 2.
pub fn zeta_int(l: u32) -> Result<f64> {
    if l < 2 {
        return Err(Error::Domain(format!("zeta({l}) requires l >= 2")));
    }
    if l <= 32 {
        return Ok(ZETA_TABLE[(l - 2) as usize]);
    }
    let s = l as f64;
    let mut sum = 1.0;
    for k in 2..100 {
        let t = (k as f64).powf(-s);
        sum += t;
        if t < 1e-18 {
            break;
        }
    }
    Ok(sum)
}
