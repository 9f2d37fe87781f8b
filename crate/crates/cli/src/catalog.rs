use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub name: &'static str,
    /// Subject area the experiment reproduces.
    pub topic: &'static str,
    pub summary: &'static str,
}

const fn e(name: &'static str, topic: &'static str, summary: &'static str) -> Entry {
    Entry { name, topic, summary }
}

pub const CATALOG: [Entry; 17] = [
    e(
        "mz",
        "measurement: Mach-Zehnder interferometer",
        "detector probabilities with and without the second beam splitter",
    ),
    e(
        "cat",
        "measurement: Schrodinger's cat chain",
        "cat, observer and environment state with its reduced density matrices",
    ),
    e("zeno", "measurement: quantum Zeno effect", "survival under N equally spaced projective measurements"),
    e(
        "decohere",
        "measurement: decoherence of a detector record",
        "off-diagonal coherence against environment overlap",
    ),
    e("bell", "nonlocality: Bell inequality", "singlet correlations against a local hidden variable model"),
    e(
        "frwigner",
        "gedanken: extended Wigner's friend",
        "outcome table and verified implications of the four-agent protocol",
    ),
    e("immortal", "gedanken: quantum suicide", "branch weights over repeated lethal measurements"),
    e(
        "gaussent",
        "entanglement: coupled oscillators and the area law",
        "block entropy of a harmonic chain and its log fit",
    ),
    e("hawking", "black holes: Hawking temperature and entropy", "Schwarzschild thermodynamics and the first law"),
    e("unruh", "black holes: Unruh effect", "thermal reduction of the two-mode Unruh state"),
    e("barrier", "black holes: scattering barrier", "peak of the Regge-Wheeler barrier against angular momentum"),
    e("pagecurve", "black holes: information and the Page curve", "Haar-average subsystem entropy and information"),
    e("tfd", "holography: thermofield double", "Gibbs reduction of the thermofield double"),
    e("rt", "holography: Ryu-Takayanagi formula", "geodesic length in AdS3 against the CFT entropy"),
    e("dim", "holography: AdS scaling dimensions", "scaling dimension against mass with the BF bound"),
    e("clock", "time: Page-Wootters mechanism", "conditional probabilities read off an internal photon clock"),
    e("bohm", "interpretations: pilot-wave dynamics", "Bohmian trajectories and equivariance of the Born density"),
];

pub fn lookup(name: &str) -> Option<&'static Entry> {
    CATALOG.iter().find(|e| e.name == name)
}
