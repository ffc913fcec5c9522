"""Base functions written in R itself, evaluated into the base environment at start-up."""

PRELUDE = r'''
identity <- function(x) x

isTRUE <- function(x) is.logical(x) && length(x) == 1L && !is.na(x) && x

isFALSE <- function(x) is.logical(x) && length(x) == 1L && !is.na(x) && !x

ifelse <- function(test, yes, no) {
    if (!is.logical(test)) {
        nm <- names(test)
        test <- as.logical(test)
        names(test) <- nm
    }
    ans <- test
    len <- length(ans)
    ypos <- which(test)
    npos <- which(!test)
    if (length(ypos) > 0L)
        ans[ypos] <- rep(yes, length.out = len)[ypos]
    if (length(npos) > 0L)
        ans[npos] <- rep(no, length.out = len)[npos]
    ans
}

Negate <- function(f) {
    f <- match.fun(f)
    function(...) !f(...)
}

Position <- function(f, x, right = FALSE, nomatch = NA_integer_) {
    f <- match.fun(f)
    ind <- seq_along(x)
    if (right)
        ind <- rev(ind)
    for (i in ind) if (isTRUE(f(x[[i]])))
        return(i)
    nomatch
}

Find <- function(f, x, right = FALSE, nomatch = NULL) {
    f <- match.fun(f)
    if ((pos <- Position(f, x, right, nomatch = 0L)) > 0L)
        x[[pos]]
    else nomatch
}

union <- function(x, y) unique(c(as.vector(x), as.vector(y)))

intersect <- function(x, y) {
    u <- unique(as.vector(x))
    u[match(u, as.vector(y), 0L) > 0L]
}

setdiff <- function(x, y) {
    u <- unique(as.vector(x))
    u[match(u, as.vector(y), 0L) == 0L]
}

is.element <- function(el, table) match(el, table, 0L) > 0L

eval.parent <- function(expr, n = 1) {
    p <- parent.frame(n + 1)
    eval(expr, p)
}

all.equal <- function(target, current, tolerance = 1.5e-08, ...) {
    if (!is.numeric(target) || !is.numeric(current)) {
        if (identical(target, current))
            return(TRUE)
        return("target, current do not match when deparsed")
    }
    if (length(target) != length(current))
        return(paste0("Lengths (", length(target), ", ", length(current), ") differ"))
    xy <- mean(abs(target - current))
    xn <- mean(abs(target))
    if (is.finite(xn) && xn > tolerance)
        xy <- xy/xn
    if (is.na(xy) || xy <= tolerance)
        TRUE
    else paste("Mean relative difference:", format(xy))
}

print.condition <- function(x, ...) {
    msg <- conditionMessage(x)
    call <- conditionCall(x)
    cl <- class(x)[1L]
    if (!is.null(call))
        cat("<", cl, " in ", deparse(call), ": ", msg, ">\n", sep = "")
    else cat("<", cl, ": ", msg, ">\n", sep = "")
    invisible(x)
}

print.noquote <- function(x, ...) {
    print(unclass(x), quote = FALSE, ...)
    invisible(x)
}
'''
