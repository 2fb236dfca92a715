// The strict grammar is a deliberate hurdle, so it is spelled out next to
// the input box.

export const DICTATION_CHEATSHEET = `Terms: letters a-z, numerals, application f(x)
Relations: a<b  a<=b  a>b  a>=b  a=b
Connectives (brackets required): (P&Q)  (PvQ)  (P->Q)  (P<->Q)
Negation: ~P      Quantifiers: Ax:P  Ex:P
No extra brackets, no precedence: write (x<y&y<z), never x<y&y<z or ((x<y)).`;

export const GRID_CHEATSHEET = `Squares: letters a-z (u is the center)
Atoms: rechts(a,b)  links(a,b)  ueber(a,b)  unter(a,b)  nachbar(a,b)
       a=b  dist(a,b)=dist(x,y)
Connectives (brackets required): (P&Q)  (PvQ)  (P->Q)  (P<->Q)
Negation: ~P      Quantifiers: Ax:P  Ex:P
Exactly one free variable; constant letters of the exercise cannot be bound.`;
