/**
 * Structural alert patterns (reactive / undesirable functionality)
 * feeding the ALERTS descriptor: a molecule's count is the number of
 * patterns with at least one match.
 *
 * This is the subset of the published alert list expressible within the
 * chemistry this project generates and scores (organic subset, neutral,
 * no isotopes); metal, isotope and exotic-charge patterns are omitted.
 */

export const ALERT_SMARTS: string[] = [
  // strained three-membered heterocycles
  "*1[O,S,N]*1",
  // acyl / sulfonyl halides and reactive esters
  "[S,C](=[O,S])[F,Br,Cl,I]",
  "[CX4][Cl,Br,I]",
  "[#6]S(=O)(=O)O[#6]",
  "OS(=O)(=O)[O-]",
  // Michael acceptors and activated alkynes
  "[$([CH]),$(CC)]#CC(=O)[#6]",
  "[$([CH]),$(CC)]#CC(=O)O[#6]",
  "[$([CH]),$(CC)]#CS(=O)(=O)[#6]",
  "C=C(C=O)C=O",
  "[CX4]=[CX3][CX3](=O)[!N]",
  "C=[C!r]C#N",
  // aldehydes, dicarbonyls, quinones
  "[CH1](=O)",
  "[#6](=O)[#6](=O)",
  "C1(=[O,N])C=CC(=[O,N])C=C1",
  "C1(=[O,N])C(=[O,N])C=CC=C1",
  // peroxides, N-oxide-like, oximes
  "[#8][#8]",
  "n[OH]",
  "[C;!R]=[N;!R][OH]",
  "[C;!R]=[N;!R]O[#6]",
  // imines, azo, hydrazines, azides
  "[C;!R]=[N;!R]",
  "[N!R]=[N!R]",
  "[#7][NH2]",
  "C(=O)N[NH2]",
  "N=[N+]=[N-]",
  "N#CC[OH]",
  "N#CC(=O)",
  // nitro and nitroso
  "[N+](=O)[O-]",
  "[#7;!R]=O",
  // thio variants
  "[#6]=S",
  "[#16][#16]",
  "[SH]",
  // anhydrides, carbamic/carbonate-like, imides
  "[C,c](=O)O[C,c](=O)",
  "C(=O)OC(=O)",
  "[#8]C(=O)[#8]",
  "O=CN(C=O)",
  // halopyridines / activated heteroaryl halides
  "n1c([F,Cl,Br,I])cccc1",
  "c1ccc([F,Cl,Br,I])nc1",
  // polyenes and cumulated systems
  "C=C=C",
  "[#6]=[#6][#6]=[#6][#6]=[#6][#6]=[#6]",
  "C#CC#C",
  // acetal-like and aminal-like leaving groups
  "[CX4]([O,N])([O,N])[O,N]",
  "[NX3][CH2][NX3]",
  "[#8][CH2][#8]",
  // isocyanate / isothiocyanate / ketene
  "N=C=O",
  "N=C=S",
  "C=C=O",
  // sulfonate-like leaving groups on carbon
  "[#6]OS(=O)(=O)[#6]",
  // phenol esters and carbonates (hydrolytically labile)
  "c1ccccc1OC(=O)[#6]",
  "c1ccccc1OC(=O)O",
  // hydroxylamines and aminonitriles
  "[#7;!$(N=O)][OH]",
  "N[CH2]C#N",
  // sulfonic acids
  "S(=O)(=O)[OH]",
  // unbranched long chains (floppy aliphatics)
  "[CH2][CH2][CH2][CH2][CH2][CH2][CH2][CH2]",
];
