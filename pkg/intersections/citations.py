"""
Etiquetas de cita que acompañan a cada veredicto y paso de derivación.

Se mantienen literales para que la salida sea auditable contra la fuente.
"""

SAME_MULTIDEGREE = 'Remark "rem:cl-gen"'
SC_CONVERSE = 'Proposition "SC-conv"'
SD_EQUAL = 'Remark "SD-equal"'
SW_CLASSES = 'Proposition "SW-classes"'
P_MOD_4 = 'Remark "p-mod-4"'

THEOREM_1_2 = 'Theorem 1.2'
THEOREM_1_7 = 'Theorem 1.7'
THEOREM_1_9 = 'Theorem 1.9'
THEOREM_1_12_A = 'Theorem 1.12(a)'
THEOREM_1_12_B = 'Theorem 1.12(b)'
REMARK_22 = 'Remark "rem:22"'
INERTIA_CONJECTURE = 'Conjecture "inertia"'
KASILINGAM = 'Theorem "thm:K"'

WALL_JUPP = 'Wall/Jupp'
FANG_WANG = 'Fang–Wang'
KRECK_TRAVING = 'Kreck–Traving'
FREEDMAN = 'Freedman'

LEMMA_MO8 = 'Lemma "pi_*(MO8)"'
LEMMA_CP1 = 'Lemma "Omega_8(CP1)"'
LEMMA_EXTENSION = 'Lemma "extension_and_Toda"'
PROP_I_CP1 = 'Proposition "i_CP1"'
EQ_C_ETA = 'Eq. "(eq:C_eta)"'
EQ_MO_C_ETA = 'Eq. "(eq:pi_8(MO(C_eta)))"'
