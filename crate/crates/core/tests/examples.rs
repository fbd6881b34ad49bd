//! Every example runs to completion.

macro_rules! example {
    ($name:ident) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!("../examples/", stringify!($name), ".rs"));

            #[test]
            fn runs() {
                run_example().unwrap();
            }
        }
    };
}

example!(faddeeva_voigt);
example!(eit_spectrum);
example!(fwm_spectrum);
example!(biphoton_spectrum);
example!(wavepacket);
example!(linewidth_ratios);
example!(fwhm_map);
example!(estimate_params);
example!(run_config);
