# 60-digit reference steady states for small truncations (test oracle only)
import mpmath as mp
mp.mp.dps=60
def kron(A,B):
    r=mp.matrix(A.rows*B.rows,A.cols*B.cols)
    for i in range(A.rows):
        for j in range(A.cols):
            for k in range(B.rows):
                for l in range(B.cols):
                    r[i*B.rows+k,j*B.cols+l]=A[i,j]*B[k,l]
    return r
def eye(n): return mp.eye(n)
def ops(N):
    a=mp.matrix(N,N)
    for n in range(1,N): a[n-1,n]=mp.sqrt(n)
    s=mp.matrix(2,2); s[0,1]=1  # |g><e|, g index 0
    return a,s
def H_jcm(eta,N):
    a,s=ops(N); A=kron(a,eye(2)); S=kron(eye(N),s)
    sz=s.H*s - s*s.H
    return A.H*A + kron(eye(N),sz)*mp.mpf('0.5') + mp.mpc(0,1)*eta*(S.H*A - A.H*S), A, S
def funm(X,f):
    E,Q=mp.eighe(X)
    D=mp.diag([f(e) for e in E]); return Q*D*Q.H
def H_qrm(eta,N):
    a,s=ops(N); sz=s.H*s - s*s.H; sy=mp.mpc(0,1)*(s.H-s)
    X=(a+a.H)*(2*eta)
    H=kron(a.H*a,eye(2)) + (kron(funm(X,mp.cos),sz)+kron(funm(X,mp.sin),sy))*mp.mpf('0.5')
    return H, kron(a,eye(2)), kron(eye(N),s)
def liou(H,cops):
    d=H.rows; I=eye(d)
    L=(kron(I,H)-kron(H.T,I))*mp.mpc(0,-1)
    for r,O in cops:
        OdO=O.H*O
        Oc=mp.matrix(O.rows,O.cols)
        for i in range(O.rows):
            for j in range(O.cols): Oc[i,j]=mp.conj(O[i,j])
        L+= (kron(Oc,O)*2 - kron(I,OdO) - kron(OdO.T,I))*(r/2)
    return L
def solve(L,d):
    A=L.copy(); b=mp.matrix(d*d,1)
    for j in range(d*d): A[0,j]=0
    for i in range(d): A[0,i*d+i]=1
    b[0]=1
    v=mp.lu_solve(A,b)
    r=mp.matrix(d,d)
    for i in range(d):
        for j in range(d): r[i,j]=v[j*d+i]
    return r
def tr(M): return sum(M[i,i] for i in range(M.rows))
def g2(r,X):
    n=tr(X.H*X*r).real; return tr(X.H*X.H*X*X*r).real/n**2, n
def dress(O,E,Q):
    Oe=Q.H*O*Q; d=len(E); X=mp.matrix(d,d)
    for m in range(d):
        for n in range(d):
            if E[n]>E[m]+mp.mpf('1e-12'): X[m,n]=Oe[m,n]
    return X
k=mp.mpf('0.05'); ga=mp.mpf('0.001')
def jcm_case(N,eta,G):
    H,A,S=H_jcm(mp.mpf(eta),N); L=liou(H,[(mp.mpf(G),S.H),(ga,S),(k,A)]); return g2(solve(L,2*N),A)
def qrm_case(N,eta,G):
    H,A,S=H_qrm(mp.mpf(eta),N); E,Q=mp.eighe(H)
    xa=dress((A.H-A)*mp.mpc(0,1),E,Q); xs=dress(S+S.H,E,Q)
    He=mp.diag([e-E[0] for e in E])
    L=liou(He,[(mp.mpf(G),xs.H),(ga,xs),(k,xa)]); return g2(solve(L,2*N),xa)
for name,f,args in [("jcm",jcm_case,(3,'1e-3','1e-9')),("jcm",jcm_case,(4,'1e-6','1e-8')),("jcm",jcm_case,(4,'0.5','1e-8')),
                    ("qrm",qrm_case,(4,'0.3','1e-9')),("qrm",qrm_case,(4,'0.025','1e-9'))]:
    g,n=f(*args); print(name,args,mp.nstr(g,17),mp.nstr(n,17))
