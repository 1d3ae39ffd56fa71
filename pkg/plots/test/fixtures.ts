/** Golden CSVs: byte-for-byte copies of real simulator output. */

export const SWEEP_CSV = `value,eta,fidelity,fidelity_phase_opt,delta_e_min_eV,path_count,error
0,1,0.98234481998073586,0.98234481998073586,0.030612809526736506,2,
0.39269908169872414,0.95981413249110492,0.98485244281865503,0.98485244281865492,0.02828254815441833,4,
0.78539816339744828,0.84805894622268752,0.9910143822378632,0.9910143822378632,0.021646525207527412,4,
`;

export const SWEEP_CSV_WITH_ERROR = `value,eta,fidelity,fidelity_phase_opt,delta_e_min_eV,path_count,error
-1,nan,nan,nan,nan,0,UsageError
4,1,0.99641182353364388,0.99641182353364377,0.013605693122993756,2,
6,1,0.98234481998073586,0.98234481998073586,0.030612809526736506,2,
`;

export const SWEEP_CSV_SINGLE_ROW = `value,eta,fidelity,fidelity_phase_opt,delta_e_min_eV,path_count,error
6,1,0.98234481998073586,0.98234481998073586,0.030612809526736506,2,
`;

export const POPULATIONS_CSV = `t_per_gamma0,p0_classical,p1_classical,p2_classical,p0_quantum,p1_quantum,p2_quantum
0,0,0,1,0,0,1
1,0.55,0.25,0.2,0.55,0.25,0.2
2,0.83,0.12,0.05,0.83,0.12,0.05
3,0.95,0.04,0.01,0.95,0.04,0.01
`;
